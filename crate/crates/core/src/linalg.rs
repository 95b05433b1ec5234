//! Exact linear algebra over the rationals.
//!
//! Every subspace is stored in reduced row echelon form, so two subspaces are
//! equal exactly when their stored bases are equal. All ideals, centers and
//! annihilators in the crate are values of [`Subspace`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vector of length {found} used in a space of dimension {expected}")]
    Length { expected: usize, found: usize },
    #[error("subspaces live in spaces of different dimension ({0} vs {1})")]
    Ambient(usize, usize),
    #[error("complement requested for a subspace not contained in the enclosing space")]
    NotContained,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational {0:?}")]
pub struct RationalParseError(pub String);

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with `q != 0`.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let err = || RationalParseError(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let valid_int = |x: &str| {
        let digits = x.strip_prefix('-').unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num) {
        return Err(err());
    }
    let n = BigInt::from_str(num).map_err(|_| err())?;
    let d = match den {
        Some(d) => {
            if d.starts_with('-') || !valid_int(d) {
                return Err(err());
            }
            BigInt::from_str(d).map_err(|_| err())?
        }
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense coordinate vector with respect to a fixed basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<Rational>);

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter().map(format_rational)).finish()
    }
}

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_rationals(coords: Vec<Rational>) -> Self {
        Vector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn set(&mut self, i: usize, value: Rational) {
        self.0[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Nonzero coordinates with their indices.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn support(&self) -> Vec<usize> {
        self.nonzero().map(|(i, _)| i).collect()
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &Vector) {
        debug_assert_eq!(self.len(), other.len());
        if c.is_zero() {
            return;
        }
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }

    pub fn scaled(&self, c: &Rational) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn sum(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_scaled(&Rational::one(), other);
        v
    }

    pub fn difference(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_scaled(&-Rational::one(), other);
        v
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Scales so the leading nonzero coordinate is 1.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.0.iter().find(|c| !c.is_zero()).cloned() {
            if !lead.is_one() {
                for c in self.0.iter_mut() {
                    *c /= &lead;
                }
            }
        }
        self
    }

    fn leading(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// Canonical text rows used in reports.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

/// Subspace of `F^n` with a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient", &self.ambient)
            .field("rows", &self.rows)
            .finish()
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| Vector::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given coordinate axes.
    pub fn coordinate(ambient: usize, axes: impl IntoIterator<Item = usize>) -> Self {
        let mut axes: Vec<usize> = axes.into_iter().collect();
        axes.sort_unstable();
        axes.dedup();
        Subspace {
            ambient,
            rows: axes.iter().map(|&i| Vector::unit(ambient, i)).collect(),
            pivots: axes,
        }
    }

    pub fn span<'a, I>(ambient: usize, vectors: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = &'a Vector>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &Vector) -> Result<(), LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::Length {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::Ambient(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating every pivot column of `self`.
    fn residual(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r.0[p].clone();
            if !c.is_zero() {
                r.add_scaled(&-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &Vector) -> Result<bool, LinalgError> {
        self.check_len(v)?;
        Ok(self.residual(v).is_zero())
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &Vector) -> Result<bool, LinalgError> {
        self.check_len(v)?;
        let r = self.residual(v);
        let Some(p) = r.leading() else {
            return Ok(false);
        };
        let r = r.normalized();
        for row in self.rows.iter_mut() {
            let c = row.0[p].clone();
            if !c.is_zero() {
                row.add_scaled(&-c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let k = self.dim();
        let m = other.dim();
        if k == 0 || m == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // a_1 s_1 + ... + a_k s_k - b_1 t_1 - ... - b_m t_m = 0
        let constraints: Vec<Vector> = (0..self.ambient)
            .map(|c| {
                let mut coeffs: Vec<Rational> = self.rows.iter().map(|s| s.0[c].clone()).collect();
                coeffs.extend(other.rows.iter().map(|t| -t.0[c].clone()));
                Vector(coeffs)
            })
            .collect();
        let kernel = solve_homogeneous(k + m, &constraints)?;
        let mut out = Subspace::zero(self.ambient);
        for sol in kernel.basis() {
            let mut v = Vector::zeros(self.ambient);
            for (a, s) in sol.0[..k].iter().zip(&self.rows) {
                v.add_scaled(a, s);
            }
            out.insert(&v)?;
        }
        Ok(out)
    }

    pub fn equal(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.rows.iter().all(|v| other.residual(v).is_zero()))
    }

    /// Canonical complement of `self` inside `within`.
    ///
    /// Candidates are the echelon rows of `within`, those whose pivot is not a
    /// pivot of `self` first; each candidate is kept if it enlarges the span.
    pub fn complement(&self, within: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(within)?;
        if !self.is_subspace_of(within)? {
            return Err(LinalgError::NotContained);
        }
        let (fresh, rest): (Vec<_>, Vec<_>) = within
            .rows
            .iter()
            .zip(&within.pivots)
            .partition(|(_, p)| self.pivots.binary_search(p).is_err());
        let mut running = self.clone();
        let mut chosen = Subspace::zero(self.ambient);
        for (v, _) in fresh.into_iter().chain(rest) {
            if running.insert(v)? {
                chosen.insert(v)?;
            }
        }
        Ok(chosen)
    }

    /// Linear functionals vanishing on `self`, as coordinate vectors.
    pub fn annihilator(&self) -> Subspace {
        solve_homogeneous(self.ambient, &self.rows).expect("rows match ambient")
    }

    /// Subspace of `self` made of vectors `x` with `f(x) in target` for
    /// every linear map `f` in `maps` (each given by the images of the rows).
    pub(crate) fn preimage_within(&self, images: &[Vec<Vector>], target: &Subspace) -> Result<Subspace, LinalgError> {
        let k = self.dim();
        if k == 0 {
            return Ok(self.clone());
        }
        let functionals = target.annihilator();
        let mut constraints = Vec::new();
        for image in images {
            debug_assert_eq!(image.len(), k);
            for f in functionals.basis() {
                let row: Vec<Rational> = image.iter().map(|w| f.dot(w)).collect();
                if row.iter().any(|c| !c.is_zero()) {
                    constraints.push(Vector(row));
                }
            }
        }
        let kernel = solve_homogeneous(k, &constraints)?;
        let mut out = Subspace::zero(self.ambient);
        for sol in kernel.basis() {
            let mut v = Vector::zeros(self.ambient);
            for (a, s) in sol.0.iter().zip(&self.rows) {
                v.add_scaled(a, s);
            }
            out.insert(&v)?;
        }
        Ok(out)
    }

    /// Re-runs the echelon reduction from scratch on the stored basis.
    pub fn rereduced(&self) -> Subspace {
        Subspace::span(self.ambient, &self.rows).expect("rows match ambient")
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(Vector::to_strings).collect()
    }
}

/// Null space of the matrix whose rows are `constraints`, in `F^ambient`.
pub fn solve_homogeneous(ambient: usize, constraints: &[Vector]) -> Result<Subspace, LinalgError> {
    let rowspace = Subspace::span(ambient, constraints)?;
    let free: Vec<usize> = (0..ambient)
        .filter(|c| rowspace.pivots.binary_search(c).is_err())
        .collect();
    let mut out = Subspace::zero(ambient);
    for &f in &free {
        let mut v = Vector::unit(ambient, f);
        for (row, &p) in rowspace.rows.iter().zip(&rowspace.pivots) {
            let c = &row.0[f];
            if !c.is_zero() {
                v.0[p] = -c.clone();
            }
        }
        out.insert(&v)?;
    }
    Ok(out)
}

/// True when `r` is negative; used for sign-aware formatting.
pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn span_examples() {
        let s = Subspace::span(2, &[v(&[1, 0]), v(&[2, 0])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[v(&[1, 0])]);
        assert_eq!(Subspace::span(3, &[]).unwrap().dim(), 0);
        let full = Subspace::span(2, &[v(&[1, 1]), v(&[1, -1])]).unwrap();
        assert_eq!(full, Subspace::full(2));
        assert!(matches!(
            Subspace::span(2, &[v(&[1, 0]), v(&[1, 0, 0])]),
            Err(LinalgError::Length { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn contains_examples() {
        let s = Subspace::span(2, &[v(&[1, 0])]).unwrap();
        assert!(s.contains(&v(&[0, 0])).unwrap());
        assert!(!s.contains(&v(&[0, 1])).unwrap());
        let d = Subspace::span(2, &[v(&[1, 1])]).unwrap();
        assert!(d.contains(&v(&[3, 3])).unwrap());
        assert!(d.contains(&v(&[1])).is_err());
    }

    #[test]
    fn lattice_examples() {
        let full = Subspace::span(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let diag = Subspace::span(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(full.intersect(&diag).unwrap(), diag);
        let x = Subspace::span(2, &[v(&[1, 0])]).unwrap();
        assert_eq!(
            x.complement(&Subspace::full(2)).unwrap(),
            Subspace::span(2, &[v(&[0, 1])]).unwrap()
        );
        assert_eq!(diag.complement(&x), Err(LinalgError::NotContained));
        assert!(x.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_homogeneous(3, &[]).unwrap(), Subspace::full(3));
        assert!(solve_homogeneous(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap().is_zero());
        assert_eq!(
            solve_homogeneous(2, &[v(&[1, 1])]).unwrap(),
            Subspace::span(2, &[v(&[1, -1])]).unwrap()
        );
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4));
        assert_eq!(parse_rational("-2/-4").ok(), None);
        for bad in ["1/0", "", "1/", "a", "1.5", "--1", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
    }

    // Independent oracle: rank by fraction-free Gaussian elimination on i128.
    fn rank_oracle(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let (a, b) = (m[rank][c], m[r][c]);
                    for k in 0..cols {
                        m[r][k] = m[r][k] * a - m[rank][k] * b;
                    }
                    let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                    if g > 1 {
                        m[r].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn rows4() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..4, 4), 0..5)
    }

    #[test]
    fn dimension_formula_on_sampled_pairs() {
        // Frozen from the oracle: dim S + dim T = dim(S+T) + dim(S cap T).
        let s = [vec![1, 2, 0, 1], vec![0, 1, 1, 0]];
        let t = [vec![1, 3, 1, 1], vec![2, 0, 0, 1], vec![0, 0, 1, -1]];
        let all: Vec<Vec<i64>> = s.iter().chain(&t).cloned().collect();
        assert_eq!(rank_oracle(&s), 2);
        assert_eq!(rank_oracle(&t), 3);
        assert_eq!(rank_oracle(&all), 4);
        let ss = Subspace::span(4, &s.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap();
        let tt = Subspace::span(4, &t.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap();
        assert_eq!(ss.sum(&tt).unwrap().dim(), 4);
        assert_eq!(ss.intersect(&tt).unwrap().dim(), 1);
        assert!(ss.intersect(&tt).unwrap().contains(&v(&[1, 3, 1, 1])).unwrap());
    }

    proptest! {
        #[test]
        fn rank_matches_oracle(rows in rows4()) {
            let vs: Vec<Vector> = rows.iter().map(|r| v(r)).collect();
            prop_assert_eq!(Subspace::span(4, &vs).unwrap().dim(), rank_oracle(&rows));
        }

        #[test]
        fn dimension_formula(a in rows4(), b in rows4()) {
            let s = Subspace::span(4, &a.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap();
            let t = Subspace::span(4, &b.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap();
            let sum = s.sum(&t).unwrap();
            let meet = s.intersect(&t).unwrap();
            prop_assert_eq!(sum.dim() + meet.dim(), s.dim() + t.dim());
            prop_assert!(meet.is_subspace_of(&s).unwrap() && meet.is_subspace_of(&t).unwrap());
            prop_assert_eq!(sum.clone(), t.sum(&s).unwrap());
            prop_assert_eq!(meet, t.intersect(&s).unwrap());
            // absorption
            prop_assert_eq!(s.sum(&s.intersect(&t).unwrap()).unwrap(), s.clone());
            prop_assert_eq!(s.intersect(&s.sum(&t).unwrap()).unwrap(), s.clone());
        }

        #[test]
        fn rereduction_is_identity(a in rows4()) {
            let s = Subspace::span(4, &a.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(s.rereduced(), s);
        }

        #[test]
        fn complement_is_direct(a in rows4(), b in rows4()) {
            let s = Subspace::span(4, &a.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap();
            let t = Subspace::span(4, &b.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap();
            let within = s.sum(&t).unwrap();
            let c = s.complement(&within).unwrap();
            prop_assert!(c.intersect(&s).unwrap().is_zero());
            prop_assert_eq!(c.sum(&s).unwrap(), within);
        }

        #[test]
        fn null_space_annihilates(a in rows4()) {
            let rows: Vec<Vector> = a.iter().map(|r| v(r)).collect();
            let n = solve_homogeneous(4, &rows).unwrap();
            prop_assert_eq!(n.dim() + rank_oracle(&a), 4);
            for x in n.basis() {
                for r in &rows {
                    prop_assert!(x.dot(r).is_zero());
                }
            }
        }
    }
}
