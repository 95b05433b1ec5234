//! Graded bases, structure-constant tables and multilinear evaluators.
//!
//! Skew symmetry of the bracket and commutativity of `A` hold by storage: the
//! bracket is stored on strictly increasing triples and expanded with the
//! permutation sign, the product of `A` on non-decreasing pairs. `rho` is
//! stored on ordered pairs with no symmetry assumed.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::{GroupElem, GroupError, GroupSpec};
use crate::linalg::{Rational, Subspace, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    L,
    A,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::L => "L",
            Space::A => "A",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate label {0:?} in {1}")]
    DuplicateLabel(String, &'static str),
    #[error("{labels} labels but {degrees} degrees")]
    DegreeCount { labels: usize, degrees: usize },
    #[error("degree of {label:?}: {source}")]
    Degree { label: String, source: GroupError },
    #[error("degree of {0:?} is not in normal form")]
    DegreeNotNormal(String),
    #[error("{table}: index {index} out of range (dimension {dim})")]
    Index {
        table: &'static str,
        index: usize,
        dim: usize,
    },
    #[error("bracket: repeated index in ({0}, {1}, {2})")]
    RepeatedIndex(usize, usize, usize),
    #[error("{table}: value has length {found}, expected {expected}")]
    ValueLength {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{what}: vector of length {found}, expected {expected}")]
    Mismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("permutation of length {found} for a basis of size {expected}")]
    Permutation { expected: usize, found: usize },
}

/// Basis labels with one group degree per label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    labels: Vec<String>,
    degrees: Vec<GroupElem>,
}

impl GradedBasis {
    pub fn new(
        group: &GroupSpec,
        labels: Vec<String>,
        degrees: Vec<GroupElem>,
        space: Space,
    ) -> Result<Self, ModelError> {
        if labels.len() != degrees.len() {
            return Err(ModelError::DegreeCount {
                labels: labels.len(),
                degrees: degrees.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(ModelError::DuplicateLabel(l.clone(), space.name()));
            }
        }
        for (l, d) in labels.iter().zip(&degrees) {
            if d.arity() != group.rank() {
                return Err(ModelError::Degree {
                    label: l.clone(),
                    source: GroupError::Arity {
                        expected: group.rank(),
                        found: d.arity(),
                    },
                });
            }
            if !group.conforms(d) {
                return Err(ModelError::DegreeNotNormal(l.clone()));
            }
        }
        Ok(GradedBasis { labels, degrees })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[GroupElem] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> &GroupElem {
        &self.degrees[i]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Indices of basis vectors of degree `g`.
    pub fn indices_of(&self, g: &GroupElem) -> Vec<usize> {
        (0..self.len()).filter(|&i| &self.degrees[i] == g).collect()
    }
}

type Sparse = Vec<(usize, Rational)>;

fn sparse(v: &Vector) -> Sparse {
    v.nonzero().map(|(i, c)| (i, c.clone())).collect()
}

fn negated(s: &Sparse) -> Sparse {
    s.iter().map(|(i, c)| (*i, -c.clone())).collect()
}

/// Collects a stored table value, dropping zero vectors.
fn put<K: Ord>(map: &mut BTreeMap<K, Vector>, key: K, value: Vector) {
    if value.is_zero() {
        map.remove(&key);
    } else {
        map.insert(key, value);
    }
}

/// Mutable staging area for an [`Algebra3LR`].
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    group: GroupSpec,
    l: GradedBasis,
    a: GradedBasis,
    bracket: BTreeMap<(usize, usize, usize), Vector>,
    amul: BTreeMap<(usize, usize), Vector>,
    action: BTreeMap<(usize, usize), Vector>,
    rho: BTreeMap<(usize, usize, usize), Vector>,
}

impl AlgebraBuilder {
    pub fn new(group: GroupSpec, l: GradedBasis, a: GradedBasis) -> Self {
        AlgebraBuilder {
            group,
            l,
            a,
            bracket: BTreeMap::new(),
            amul: BTreeMap::new(),
            action: BTreeMap::new(),
            rho: BTreeMap::new(),
        }
    }

    pub fn l(&self) -> &GradedBasis {
        &self.l
    }

    pub fn a(&self) -> &GradedBasis {
        &self.a
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    fn idx(&self, table: &'static str, i: usize, space: Space) -> Result<(), ModelError> {
        let dim = match space {
            Space::L => self.l.len(),
            Space::A => self.a.len(),
        };
        if i >= dim {
            return Err(ModelError::Index { table, index: i, dim });
        }
        Ok(())
    }

    fn val(&self, table: &'static str, v: &Vector, space: Space) -> Result<(), ModelError> {
        let expected = match space {
            Space::L => self.l.len(),
            Space::A => self.a.len(),
        };
        if v.len() != expected {
            return Err(ModelError::ValueLength {
                table,
                expected,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Sets `[e_i, e_j, e_k]`; any order of distinct indices is accepted and
    /// stored on the sorted triple with the permutation sign.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, v: Vector) -> Result<&mut Self, ModelError> {
        for x in [i, j, k] {
            self.idx("bracket", x, Space::L)?;
        }
        self.val("bracket", &v, Space::L)?;
        let (key, sign) = sort3(i, j, k).ok_or(ModelError::RepeatedIndex(i, j, k))?;
        let v = if sign { v.scaled(&-Rational::one()) } else { v };
        put(&mut self.bracket, key, v);
        Ok(self)
    }

    pub fn set_amul(&mut self, i: usize, j: usize, v: Vector) -> Result<&mut Self, ModelError> {
        self.idx("amul", i, Space::A)?;
        self.idx("amul", j, Space::A)?;
        self.val("amul", &v, Space::A)?;
        put(&mut self.amul, (i.min(j), i.max(j)), v);
        Ok(self)
    }

    pub fn set_action(&mut self, a: usize, x: usize, v: Vector) -> Result<&mut Self, ModelError> {
        self.idx("action", a, Space::A)?;
        self.idx("action", x, Space::L)?;
        self.val("action", &v, Space::L)?;
        put(&mut self.action, (a, x), v);
        Ok(self)
    }

    pub fn set_rho(&mut self, x: usize, y: usize, a: usize, v: Vector) -> Result<&mut Self, ModelError> {
        self.idx("rho", x, Space::L)?;
        self.idx("rho", y, Space::L)?;
        self.idx("rho", a, Space::A)?;
        self.val("rho", &v, Space::A)?;
        put(&mut self.rho, (x, y, a), v);
        Ok(self)
    }

    pub fn build(self) -> Algebra3LR {
        Algebra3LR::from_builder(self)
    }
}

/// Returns the sorted triple and whether the sorting permutation is odd.
pub fn sort3(i: usize, j: usize, k: usize) -> Option<((usize, usize, usize), bool)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut t = [i, j, k];
    let mut odd = false;
    for pass in 0..2 {
        for p in 0..2 - pass {
            if t[p] > t[p + 1] {
                t.swap(p, p + 1);
                odd = !odd;
            }
        }
    }
    Some(((t[0], t[1], t[2]), odd))
}

/// A graded 3-Lie-Rinehart candidate: it need not satisfy the axioms, which
/// are checked separately.
#[derive(Debug, Clone)]
pub struct Algebra3LR {
    group: GroupSpec,
    l: GradedBasis,
    a: GradedBasis,
    bracket: BTreeMap<(usize, usize, usize), Vector>,
    amul: BTreeMap<(usize, usize), Vector>,
    action: BTreeMap<(usize, usize), Vector>,
    rho: BTreeMap<(usize, usize, usize), Vector>,
    // dense caches, all signs and symmetries expanded
    bracket_cube: Vec<Sparse>,
    amul_square: Vec<Sparse>,
    action_grid: Vec<Sparse>,
    rho_grid: Vec<Sparse>,
}

impl PartialEq for Algebra3LR {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.l == other.l
            && self.a == other.a
            && self.bracket == other.bracket
            && self.amul == other.amul
            && self.action == other.action
            && self.rho == other.rho
    }
}

impl Eq for Algebra3LR {}

impl Algebra3LR {
    fn from_builder(b: AlgebraBuilder) -> Self {
        let n = b.l.len();
        let m = b.a.len();
        let mut bracket_cube = vec![Sparse::new(); n * n * n];
        for (&(i, j, k), v) in &b.bracket {
            let s = sparse(v);
            let ns = negated(&s);
            for (p, q, r, odd) in [
                (i, j, k, false),
                (j, k, i, false),
                (k, i, j, false),
                (j, i, k, true),
                (i, k, j, true),
                (k, j, i, true),
            ] {
                bracket_cube[(p * n + q) * n + r] = if odd { ns.clone() } else { s.clone() };
            }
        }
        let mut amul_square = vec![Sparse::new(); m * m];
        for (&(i, j), v) in &b.amul {
            amul_square[i * m + j] = sparse(v);
            amul_square[j * m + i] = sparse(v);
        }
        let mut action_grid = vec![Sparse::new(); m * n];
        for (&(a, x), v) in &b.action {
            action_grid[a * n + x] = sparse(v);
        }
        let mut rho_grid = vec![Sparse::new(); n * n * m];
        for (&(x, y, a), v) in &b.rho {
            rho_grid[(x * n + y) * m + a] = sparse(v);
        }
        Algebra3LR {
            group: b.group,
            l: b.l,
            a: b.a,
            bracket: b.bracket,
            amul: b.amul,
            action: b.action,
            rho: b.rho,
            bracket_cube,
            amul_square,
            action_grid,
            rho_grid,
        }
    }

    pub fn to_builder(&self) -> AlgebraBuilder {
        AlgebraBuilder {
            group: self.group.clone(),
            l: self.l.clone(),
            a: self.a.clone(),
            bracket: self.bracket.clone(),
            amul: self.amul.clone(),
            action: self.action.clone(),
            rho: self.rho.clone(),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn l(&self) -> &GradedBasis {
        &self.l
    }

    pub fn a(&self) -> &GradedBasis {
        &self.a
    }

    pub fn basis(&self, space: Space) -> &GradedBasis {
        match space {
            Space::L => &self.l,
            Space::A => &self.a,
        }
    }

    pub fn dim(&self, space: Space) -> usize {
        self.basis(space).len()
    }

    pub fn dim_l(&self) -> usize {
        self.l.len()
    }

    pub fn dim_a(&self) -> usize {
        self.a.len()
    }

    pub fn bracket_table(&self) -> &BTreeMap<(usize, usize, usize), Vector> {
        &self.bracket
    }

    pub fn amul_table(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.amul
    }

    pub fn action_table(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.action
    }

    pub fn rho_table(&self) -> &BTreeMap<(usize, usize, usize), Vector> {
        &self.rho
    }

    pub fn zero(&self, space: Space) -> Vector {
        Vector::zeros(self.dim(space))
    }

    pub fn unit(&self, space: Space, i: usize) -> Vector {
        Vector::unit(self.dim(space), i)
    }

    fn expect(&self, what: &'static str, v: &Vector, space: Space) -> Result<(), ModelError> {
        let expected = self.dim(space);
        if v.len() != expected {
            return Err(ModelError::Mismatch {
                what,
                expected,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn bracket_basis(&self, i: usize, j: usize, k: usize) -> &[(usize, Rational)] {
        let n = self.l.len();
        &self.bracket_cube[(i * n + j) * n + k]
    }

    pub(crate) fn amul_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.amul_square[i * self.a.len() + j]
    }

    pub(crate) fn action_basis(&self, a: usize, x: usize) -> &[(usize, Rational)] {
        &self.action_grid[a * self.l.len() + x]
    }

    pub(crate) fn rho_basis(&self, x: usize, y: usize, a: usize) -> &[(usize, Rational)] {
        let n = self.l.len();
        &self.rho_grid[(x * n + y) * self.a.len() + a]
    }

    pub fn eval_bracket(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector, ModelError> {
        for v in [x, y, z] {
            self.expect("bracket", v, Space::L)?;
        }
        let mut out = self.zero(Space::L);
        let ys: Vec<_> = y.nonzero().collect();
        let zs: Vec<_> = z.nonzero().collect();
        for (i, cx) in x.nonzero() {
            for &(j, cy) in &ys {
                if i == j {
                    continue;
                }
                let cxy = cx * cy;
                for &(k, cz) in &zs {
                    let entry = self.bracket_basis(i, j, k);
                    if entry.is_empty() {
                        continue;
                    }
                    let c = &cxy * cz;
                    add_sparse(&mut out, &c, entry);
                }
            }
        }
        Ok(out)
    }

    pub fn eval_amul(&self, a: &Vector, b: &Vector) -> Result<Vector, ModelError> {
        self.expect("amul", a, Space::A)?;
        self.expect("amul", b, Space::A)?;
        let mut out = self.zero(Space::A);
        let bs: Vec<_> = b.nonzero().collect();
        for (i, ca) in a.nonzero() {
            for &(j, cb) in &bs {
                let entry = self.amul_basis(i, j);
                if !entry.is_empty() {
                    add_sparse(&mut out, &(ca * cb), entry);
                }
            }
        }
        Ok(out)
    }

    pub fn eval_action(&self, a: &Vector, x: &Vector) -> Result<Vector, ModelError> {
        self.expect("action", a, Space::A)?;
        self.expect("action", x, Space::L)?;
        let mut out = self.zero(Space::L);
        let xs: Vec<_> = x.nonzero().collect();
        for (i, ca) in a.nonzero() {
            for &(j, cx) in &xs {
                let entry = self.action_basis(i, j);
                if !entry.is_empty() {
                    add_sparse(&mut out, &(ca * cx), entry);
                }
            }
        }
        Ok(out)
    }

    /// `rho(x, y)` applied to `a`.
    pub fn eval_rho(&self, x: &Vector, y: &Vector, a: &Vector) -> Result<Vector, ModelError> {
        self.expect("rho", x, Space::L)?;
        self.expect("rho", y, Space::L)?;
        self.expect("rho", a, Space::A)?;
        let mut out = self.zero(Space::A);
        let ys: Vec<_> = y.nonzero().collect();
        let as_: Vec<_> = a.nonzero().collect();
        for (i, cx) in x.nonzero() {
            for &(j, cy) in &ys {
                let cxy = cx * cy;
                for &(k, ca) in &as_ {
                    let entry = self.rho_basis(i, j, k);
                    if !entry.is_empty() {
                        add_sparse(&mut out, &(&cxy * ca), entry);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Span of the basis vectors of degree `g`.
    pub fn fiber(&self, space: Space, g: &GroupElem) -> Subspace {
        let basis = self.basis(space);
        Subspace::coordinate(basis.len(), basis.indices_of(g))
    }

    /// Degrees carried by at least one basis vector, in sorted order.
    pub fn degrees_present(&self, space: Space) -> BTreeSet<GroupElem> {
        self.basis(space).degrees().iter().cloned().collect()
    }

    /// Degree of a nonzero homogeneous vector; `None` for zero or mixed vectors.
    pub fn homogeneous_degree(&self, space: Space, v: &Vector) -> Option<GroupElem> {
        let basis = self.basis(space);
        let mut deg: Option<&GroupElem> = None;
        for (i, _) in v.nonzero() {
            match deg {
                None => deg = Some(basis.degree(i)),
                Some(d) if d == basis.degree(i) => {}
                Some(_) => return None,
            }
        }
        deg.cloned()
    }

    /// Splits `v` into its homogeneous components.
    pub fn components(&self, space: Space, v: &Vector) -> BTreeMap<GroupElem, Vector> {
        let basis = self.basis(space);
        let mut out: BTreeMap<GroupElem, Vector> = BTreeMap::new();
        for (i, c) in v.nonzero() {
            out.entry(basis.degree(i).clone())
                .or_insert_with(|| Vector::zeros(v.len()))
                .set(i, c.clone());
        }
        out
    }

    /// Unit of `A`, if one exists, found by solving `u e_j = e_j` for all `j`.
    pub fn a_unit(&self) -> Option<Vector> {
        let m = self.a.len();
        // unknowns u_0..u_m; equations sum_i u_i (e_i e_j)_c = delta_{jc}
        let mut rows = Vec::new();
        for j in 0..m {
            for c in 0..m {
                let mut row = vec![Rational::zero(); m + 1];
                for i in 0..m {
                    for (t, coeff) in self.amul_basis(i, j) {
                        if *t == c {
                            row[i] += coeff;
                        }
                    }
                }
                row[m] = if j == c { -Rational::one() } else { Rational::zero() };
                rows.push(Vector::from_rationals(row));
            }
        }
        let sols = crate::linalg::solve_homogeneous(m + 1, &rows).ok()?;
        let sol = sols.basis().iter().find(|s| !s.get(m).is_zero())?;
        let scale = sol.get(m).clone();
        Some(Vector::from_rationals((0..m).map(|i| sol.get(i) / &scale).collect()))
    }

    /// Relabels bases: new basis vector `q` of `L` is old vector `l_perm[q]`,
    /// likewise for `A`.
    pub fn permuted(&self, l_perm: &[usize], a_perm: &[usize]) -> Result<Algebra3LR, ModelError> {
        let inv_l = inverse(l_perm, self.l.len())?;
        let inv_a = inverse(a_perm, self.a.len())?;
        let remap = |v: &Vector, inv: &[usize]| {
            let mut out = Vector::zeros(v.len());
            for (i, c) in v.nonzero() {
                out.set(inv[i], c.clone());
            }
            out
        };
        let pick = |b: &GradedBasis, perm: &[usize]| GradedBasis {
            labels: perm.iter().map(|&p| b.labels[p].clone()).collect(),
            degrees: perm.iter().map(|&p| b.degrees[p].clone()).collect(),
        };
        let mut b = AlgebraBuilder::new(self.group.clone(), pick(&self.l, l_perm), pick(&self.a, a_perm));
        for (&(i, j, k), v) in &self.bracket {
            b.set_bracket(inv_l[i], inv_l[j], inv_l[k], remap(v, &inv_l))?;
        }
        for (&(i, j), v) in &self.amul {
            b.set_amul(inv_a[i], inv_a[j], remap(v, &inv_a))?;
        }
        for (&(a, x), v) in &self.action {
            b.set_action(inv_a[a], inv_l[x], remap(v, &inv_l))?;
        }
        for (&(x, y, a), v) in &self.rho {
            b.set_rho(inv_l[x], inv_l[y], inv_a[a], remap(v, &inv_a))?;
        }
        Ok(b.build())
    }
}

fn inverse(perm: &[usize], n: usize) -> Result<Vec<usize>, ModelError> {
    let bad = || ModelError::Permutation {
        expected: n,
        found: perm.len(),
    };
    if perm.len() != n {
        return Err(bad());
    }
    let mut inv = vec![usize::MAX; n];
    for (q, &p) in perm.iter().enumerate() {
        if p >= n || inv[p] != usize::MAX {
            return Err(bad());
        }
        inv[p] = q;
    }
    Ok(inv)
}

fn add_sparse(out: &mut Vector, c: &Rational, entry: &[(usize, Rational)]) {
    for (t, e) in entry {
        let cur = out.get(*t) + c * e;
        out.set(*t, cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};
    use proptest::prelude::*;

    fn k4() -> GroupSpec {
        GroupSpec::new(vec![2, 2]).unwrap()
    }

    fn degs(g: &GroupSpec, d: &[[i64; 2]]) -> Vec<GroupElem> {
        d.iter().map(|c| g.elem(c).unwrap()).collect()
    }

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    // A4 over Z2 x Z2, A = F with unit, rho = 0.
    fn a4() -> Algebra3LR {
        let g = k4();
        let l = GradedBasis::new(&g, names("e", 4), degs(&g, &[[1, 0], [0, 1], [1, 1], [0, 0]]), Space::L).unwrap();
        let a = GradedBasis::new(&g, vec!["1".into()], degs(&g, &[[0, 0]]), Space::A).unwrap();
        let mut b = AlgebraBuilder::new(g, l, a);
        b.set_bracket(0, 1, 2, Vector::from_ints(&[0, 0, 0, 1])).unwrap();
        b.set_bracket(0, 1, 3, Vector::from_ints(&[0, 0, 1, 0])).unwrap();
        b.set_bracket(0, 2, 3, Vector::from_ints(&[0, -1, 0, 0])).unwrap();
        b.set_bracket(1, 2, 3, Vector::from_ints(&[1, 0, 0, 0])).unwrap();
        b.set_amul(0, 0, Vector::from_ints(&[1])).unwrap();
        for x in 0..4 {
            b.set_action(0, x, Vector::unit(4, x)).unwrap();
        }
        b.build()
    }

    // A = F[t]/(t^3) with L one-dimensional, used for product checks.
    fn truncated() -> Algebra3LR {
        let g = GroupSpec::new(vec![0]).unwrap();
        let l = GradedBasis::new(&g, vec!["x".into()], vec![g.elem(&[0]).unwrap()], Space::L).unwrap();
        let a = GradedBasis::new(
            &g,
            vec!["1".into(), "t".into(), "t2".into()],
            vec![g.elem(&[0]).unwrap(), g.elem(&[1]).unwrap(), g.elem(&[2]).unwrap()],
            Space::A,
        )
        .unwrap();
        let mut b = AlgebraBuilder::new(g, l, a);
        b.set_amul(0, 0, Vector::from_ints(&[1, 0, 0])).unwrap();
        b.set_amul(0, 1, Vector::from_ints(&[0, 1, 0])).unwrap();
        b.set_amul(0, 2, Vector::from_ints(&[0, 0, 1])).unwrap();
        b.set_amul(1, 1, Vector::from_ints(&[0, 0, 1])).unwrap();
        b.build()
    }

    fn e(i: usize) -> Vector {
        Vector::unit(4, i)
    }

    #[test]
    fn bracket_examples() {
        let alg = a4();
        assert_eq!(alg.eval_bracket(&e(0), &e(1), &e(2)).unwrap(), e(3));
        assert_eq!(alg.eval_bracket(&e(1), &e(0), &e(2)).unwrap(), e(3).scaled(&rat(-1)));
        let x = Vector::from_ints(&[1, 2, 0, -1]);
        assert!(alg.eval_bracket(&x, &x, &e(2)).unwrap().is_zero());
        assert!(alg.eval_bracket(&e(0), &e(1), &Vector::zeros(3)).is_err());
    }

    #[test]
    fn product_examples() {
        let alg = truncated();
        let one = Vector::unit(3, 0);
        let t = Vector::unit(3, 1);
        let a = Vector::from_ints(&[2, -1, 5]);
        assert_eq!(alg.eval_amul(&one, &a).unwrap(), a);
        assert_eq!(alg.eval_amul(&t, &t).unwrap(), Vector::unit(3, 2));
        assert!(alg.eval_amul(&t, &Vector::unit(3, 2)).unwrap().is_zero());
        assert_eq!(alg.a_unit(), Some(one));
    }

    #[test]
    fn action_examples() {
        let alg = a4();
        let x = Vector::from_ints(&[1, 0, 3, 0]);
        assert!(alg.eval_action(&Vector::zeros(1), &x).unwrap().is_zero());
        assert_eq!(alg.eval_action(&Vector::unit(1, 0), &x).unwrap(), x);
        assert!(alg.eval_rho(&e(0), &e(1), &Vector::unit(1, 0)).unwrap().is_zero());
    }

    #[test]
    fn fiber_examples() {
        let alg = a4();
        let g = k4();
        assert_eq!(
            alg.fiber(Space::L, &g.elem(&[1, 0]).unwrap()),
            Subspace::span(4, &[e(0)]).unwrap()
        );
        assert!(alg.fiber(Space::A, &g.elem(&[1, 1]).unwrap()).is_zero());
        let mut total = Subspace::zero(4);
        for d in alg.degrees_present(Space::L) {
            total = total.sum(&alg.fiber(Space::L, &d)).unwrap();
        }
        assert!(total.is_full());
    }

    #[test]
    fn builder_rejects_bad_input() {
        let g = k4();
        assert!(matches!(
            GradedBasis::new(&g, vec!["x".into(), "x".into()], degs(&g, &[[0, 0], [0, 0]]), Space::L),
            Err(ModelError::DuplicateLabel(..))
        ));
        assert!(matches!(
            GradedBasis::new(
                &g,
                vec!["x".into()],
                vec![GroupSpec::new(vec![2]).unwrap().identity()],
                Space::L
            ),
            Err(ModelError::Degree { .. })
        ));
        let mut b = a4().to_builder();
        assert!(matches!(
            b.set_bracket(0, 0, 1, e(0)),
            Err(ModelError::RepeatedIndex(0, 0, 1))
        ));
        assert!(b.set_bracket(0, 1, 4, e(0)).is_err());
        assert!(b.set_amul(0, 0, e(0)).is_err());
        assert!(b.set_rho(0, 1, 1, Vector::zeros(1)).is_err());
    }

    #[test]
    fn sort3_signs() {
        assert_eq!(sort3(0, 1, 2), Some(((0, 1, 2), false)));
        assert_eq!(sort3(1, 0, 2), Some(((0, 1, 2), true)));
        assert_eq!(sort3(2, 0, 1), Some(((0, 1, 2), false)));
        assert_eq!(sort3(2, 1, 0), Some(((0, 1, 2), true)));
        assert_eq!(sort3(1, 1, 0), None);
    }

    #[test]
    fn permutation_round_trip() {
        let alg = a4();
        let p = alg.permuted(&[2, 0, 3, 1], &[0]).unwrap();
        assert_eq!(p.l().labels(), &["e3", "e1", "e4", "e2"]);
        // [e1, e2, e3] = e4 in new coordinates: [p1, p3, p0] = p2
        assert_eq!(p.eval_bracket(&e(1), &e(3), &e(0)).unwrap(), e(2));
        let back = p.permuted(&[1, 3, 0, 2], &[0]).unwrap();
        assert_eq!(back, alg);
        assert!(alg.permuted(&[0, 0, 1, 2], &[0]).is_err());
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-5i64..6, 1i64..4).prop_map(|(n, d)| ratio(n, d))
    }

    fn vec4() -> impl Strategy<Value = Vector> {
        prop::collection::vec(small_rat(), 4).prop_map(Vector::from_rationals)
    }

    fn vec3() -> impl Strategy<Value = Vector> {
        prop::collection::vec(small_rat(), 3).prop_map(Vector::from_rationals)
    }

    proptest! {
        #[test]
        fn bracket_is_trilinear_and_alternating(u in vec4(), v in vec4(), y in vec4(), z in vec4(),
                                                 al in small_rat(), be in small_rat()) {
            let alg = a4();
            let mut comb = u.scaled(&al);
            comb.add_scaled(&be, &v);
            let lhs = alg.eval_bracket(&comb, &y, &z).unwrap();
            let mut rhs = alg.eval_bracket(&u, &y, &z).unwrap().scaled(&al);
            rhs.add_scaled(&be, &alg.eval_bracket(&v, &y, &z).unwrap());
            prop_assert_eq!(lhs, rhs);
            prop_assert!(alg.eval_bracket(&y, &z, &y).unwrap().is_zero());
            let swapped = alg.eval_bracket(&y, &u, &z).unwrap();
            prop_assert_eq!(swapped.scaled(&rat(-1)), alg.eval_bracket(&u, &y, &z).unwrap());
        }

        #[test]
        fn amul_is_bilinear_and_symmetric(a in vec3(), b in vec3(), c in vec3(), al in small_rat()) {
            let alg = truncated();
            prop_assert_eq!(alg.eval_amul(&a, &b).unwrap(), alg.eval_amul(&b, &a).unwrap());
            let mut comb = a.clone();
            comb.add_scaled(&al, &c);
            let mut rhs = alg.eval_amul(&a, &b).unwrap();
            rhs.add_scaled(&al, &alg.eval_amul(&c, &b).unwrap());
            prop_assert_eq!(alg.eval_amul(&comb, &b).unwrap(), rhs);
        }

        #[test]
        fn components_reassemble(v in vec4()) {
            let alg = a4();
            let mut total = Vector::zeros(4);
            for (d, part) in alg.components(Space::L, &v) {
                prop_assert_eq!(alg.homogeneous_degree(Space::L, &part), Some(d));
                total = total.sum(&part);
            }
            prop_assert_eq!(total, v);
        }
    }
}
