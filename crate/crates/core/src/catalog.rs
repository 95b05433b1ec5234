//! Constructors and built-in instances with known structure.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Algebra3LR, AlgebraBuilder, GradedBasis, ModelError, Space};
use crate::axioms::{run_all, AxiomId};
use crate::connections::compute_supports;
use crate::decompose::structure::{check_tight, structure_ideals};
use crate::group::{GroupElem, GroupSpec};
use crate::linalg::{rat, Rational, Subspace, Vector};

pub const BUILTIN_NAMES: [&str; 5] = ["trivial", "a4", "gl2-trace", "a4-dual-numbers", "tight-pair"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown builtin {0:?}")]
    Unknown(String),
    #[error("trace does not vanish on [{0}, {1}]")]
    TraceOnBracket(String, String),
    #[error("tau({0} {1}) {2} != tau({1}) {0} {2}")]
    TraceCompat(String, String, String),
    #[error("Jacobi identity fails on {0}, {1}, {2}")]
    Jacobi(String, String, String),
    #[error("base of a tensor product must have A = F and rho = 0")]
    BaseShape,
    #[error("instance fails axioms: {0:?}")]
    Invalid(Vec<AxiomId>),
    #[error("instance is not tight")]
    NotTight,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A graded Lie-Rinehart algebra with a trace.
#[derive(Debug, Clone)]
pub struct LieRinehartSeed {
    pub group: GroupSpec,
    pub l: GradedBasis,
    pub a: GradedBasis,
    /// `[e_i, e_j]` for `i < j`.
    pub lie: BTreeMap<(usize, usize), Vector>,
    pub amul: BTreeMap<(usize, usize), Vector>,
    pub action: BTreeMap<(usize, usize), Vector>,
    /// `rho(e_x)(a_i)`
    pub rho: BTreeMap<(usize, usize), Vector>,
    pub trace: Vec<Rational>,
}

impl LieRinehartSeed {
    fn lie_bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.l.len();
        let mut out = Vector::zeros(n);
        for ((i, j), v) in &self.lie {
            let c = x.get(*i) * y.get(*j) - x.get(*j) * y.get(*i);
            if !c.is_zero() {
                out.add_scaled(&c, v);
            }
        }
        out
    }

    fn tau(&self, x: &Vector) -> Rational {
        x.dot(&Vector::from_rationals(self.trace.clone()))
    }

    fn act(&self, a: usize, x: &Vector) -> Vector {
        let mut out = Vector::zeros(self.l.len());
        for (i, c) in x.nonzero() {
            if let Some(v) = self.action.get(&(a, i)) {
                out.add_scaled(c, v);
            }
        }
        out
    }

    fn check(&self) -> Result<(), CatalogError> {
        let n = self.l.len();
        let e = |i| Vector::unit(n, i);
        let name = |i: usize| self.l.label(i).to_string();
        for i in 0..n {
            for j in i + 1..n {
                if !self.tau(&self.lie_bracket(&e(i), &e(j))).is_zero() {
                    return Err(CatalogError::TraceOnBracket(name(i), name(j)));
                }
                for k in j + 1..n {
                    let mut s = self.lie_bracket(&e(i), &self.lie_bracket(&e(j), &e(k)));
                    s = s.sum(&self.lie_bracket(&e(j), &self.lie_bracket(&e(k), &e(i))));
                    s = s.sum(&self.lie_bracket(&e(k), &self.lie_bracket(&e(i), &e(j))));
                    if !s.is_zero() {
                        return Err(CatalogError::Jacobi(name(i), name(j), name(k)));
                    }
                }
            }
        }
        for a in 0..self.a.len() {
            for x in 0..n {
                let tax = self.tau(&self.act(a, &e(x)));
                for y in 0..n {
                    let lhs = e(y).scaled(&tax);
                    let rhs = self.act(a, &e(y)).scaled(&self.tau(&e(x)));
                    if lhs != rhs {
                        return Err(CatalogError::TraceCompat(self.a.label(a).to_string(), name(x), name(y)));
                    }
                }
            }
        }
        Ok(())
    }
}

fn validated(alg: Algebra3LR) -> Result<Algebra3LR, CatalogError> {
    let report = run_all(&alg);
    if report.pass() {
        Ok(alg)
    } else {
        Err(CatalogError::Invalid(report.failing()))
    }
}

/// `[x1, x2, x3] = τ(x1)[x2, x3] - τ(x2)[x1, x3] + τ(x3)[x1, x2]` and
/// `rho(x, y) = τ(x) rho(y) - τ(y) rho(x)`.
pub fn from_lie_trace(seed: &LieRinehartSeed) -> Result<Algebra3LR, CatalogError> {
    seed.check()?;
    let (n, m) = (seed.l.len(), seed.a.len());
    let e = |i| Vector::unit(n, i);
    let t = |i: usize| seed.trace[i].clone();
    let mut b = AlgebraBuilder::new(seed.group.clone(), seed.l.clone(), seed.a.clone());
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut v = seed.lie_bracket(&e(j), &e(k)).scaled(&t(i));
                v.add_scaled(&-t(j), &seed.lie_bracket(&e(i), &e(k)));
                v.add_scaled(&t(k), &seed.lie_bracket(&e(i), &e(j)));
                b.set_bracket(i, j, k, v)?;
            }
        }
    }
    for (&(i, j), v) in &seed.amul {
        b.set_amul(i, j, v.clone())?;
    }
    for (&(a, x), v) in &seed.action {
        b.set_action(a, x, v.clone())?;
    }
    let zero = Vector::zeros(m);
    for x in 0..n {
        for y in 0..n {
            for a in 0..m {
                let ry = seed.rho.get(&(y, a)).unwrap_or(&zero);
                let rx = seed.rho.get(&(x, a)).unwrap_or(&zero);
                let mut v = ry.scaled(&t(x));
                v.add_scaled(&-t(y), rx);
                b.set_rho(x, y, a, v)?;
            }
        }
    }
    validated(b.build())
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `gl2` with the matrix trace, `Z`-graded by the `e`/`f` weight, over `A = F`.
pub fn gl2_seed() -> LieRinehartSeed {
    let group = GroupSpec::new(vec![0]).expect("Z");
    let d = |c: i64| group.elem(&[c]).expect("arity");
    let l = GradedBasis::new(
        &group,
        labels(&["e", "f", "h", "I"]),
        vec![d(1), d(-1), d(0), d(0)],
        Space::L,
    )
    .expect("basis");
    let a = GradedBasis::new(&group, labels(&["1"]), vec![d(0)], Space::A).expect("basis");
    let v = |c: [i64; 4]| Vector::from_ints(&c);
    let mut lie = BTreeMap::new();
    lie.insert((0, 1), v([0, 0, 1, 0]));
    lie.insert((0, 2), v([-2, 0, 0, 0]));
    lie.insert((1, 2), v([0, 2, 0, 0]));
    let mut amul = BTreeMap::new();
    amul.insert((0, 0), Vector::from_ints(&[1]));
    let mut action = BTreeMap::new();
    for x in 0..4 {
        action.insert((0, x), Vector::unit(4, x));
    }
    LieRinehartSeed {
        group,
        l,
        a,
        lie,
        amul,
        action,
        rho: BTreeMap::new(),
        trace: vec![rat(0), rat(0), rat(0), rat(2)],
    }
}

/// The simple 4-dimensional 3-Lie algebra over `A = F`, graded by `Z2 x Z2`.
pub fn a4() -> Algebra3LR {
    let g = GroupSpec::new(vec![2, 2]).expect("moduli");
    let d = |c: [i64; 2]| g.elem(&c).expect("arity");
    let l = GradedBasis::new(
        &g,
        labels(&["e1", "e2", "e3", "e4"]),
        vec![d([1, 0]), d([0, 1]), d([1, 1]), d([0, 0])],
        Space::L,
    )
    .expect("basis");
    let a = GradedBasis::new(&g, labels(&["1"]), vec![d([0, 0])], Space::A).expect("basis");
    let mut b = AlgebraBuilder::new(g, l, a);
    let e = |i| Vector::unit(4, i);
    b.set_bracket(0, 1, 2, e(3)).expect("valid");
    b.set_bracket(0, 1, 3, e(2)).expect("valid");
    b.set_bracket(0, 2, 3, e(1).scaled(&rat(-1))).expect("valid");
    b.set_bracket(1, 2, 3, e(0)).expect("valid");
    b.set_amul(0, 0, Vector::unit(1, 0)).expect("valid");
    for i in 0..4 {
        b.set_action(0, i, e(i)).expect("valid");
    }
    b.build()
}

/// Commutative algebra on `A` only, graded by `group`; `products[(i, j)]`
/// is `b_i b_j`.
pub fn commutative_algebra(
    group: GroupSpec,
    names: &[&str],
    degrees: Vec<GroupElem>,
    products: &[((usize, usize), Vector)],
) -> Result<Algebra3LR, CatalogError> {
    let l = GradedBasis::new(&group, vec![], vec![], Space::L)?;
    let a = GradedBasis::new(&group, labels(names), degrees, Space::A)?;
    let mut b = AlgebraBuilder::new(group, l, a);
    for ((i, j), v) in products {
        b.set_amul(*i, *j, v.clone())?;
    }
    Ok(b.build())
}

/// `L ⊗ B` over `B`, for `base` with `A = F` and `rho = 0`.
///
/// Graded by `G_base x G_B`; the bracket is extended `B`-trilinearly.
pub fn base_change(base: &Algebra3LR, b: &Algebra3LR) -> Result<Algebra3LR, CatalogError> {
    if base.dim_a() != 1 || !base.rho_table().is_empty() || base.a_unit().is_none() {
        return Err(CatalogError::BaseShape);
    }
    let (nl, nb) = (base.dim_l(), b.dim_a());
    let group = base.group().product(b.group());
    let offset = base.group().rank();
    let unit = b.a_unit();
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for beta in 0..nb {
        let is_unit = unit.as_ref() == Some(&b.unit(Space::A, beta));
        for x in 0..nl {
            names.push(if is_unit {
                base.l().label(x).to_string()
            } else {
                format!("{}{}", b.a().label(beta), base.l().label(x))
            });
            let dx = group.embed(base.l().degree(x), 0);
            let db = group.embed(b.a().degree(beta), offset);
            degrees.push(group.op(&dx, &db));
        }
    }
    let l = GradedBasis::new(&group, names, degrees, Space::L)?;
    let a_degrees = (0..nb).map(|i| group.embed(b.a().degree(i), offset)).collect();
    let a = GradedBasis::new(&group, b.a().labels().to_vec(), a_degrees, Space::A)?;
    let n = nl * nb;
    let split = |p: usize| (p / nl, p % nl);
    // β ⊗ v for β in B and v in base L
    let lift = |beta: &Vector, v: &Vector| {
        let mut out = Vector::zeros(n);
        for (q, c) in beta.nonzero() {
            for (x, d) in v.nonzero() {
                out.set(q * nl + x, c * d);
            }
        }
        out
    };
    let ub = |i| b.unit(Space::A, i);
    let ul = |i| base.unit(Space::L, i);
    let mut builder = AlgebraBuilder::new(group, l, a);
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                let ((bp, xp), (bq, xq), (br, xr)) = (split(p), split(q), split(r));
                if xp == xq || xq == xr || xp == xr {
                    continue;
                }
                let coef = b.eval_amul(&b.eval_amul(&ub(bp), &ub(bq))?, &ub(br))?;
                let br_ = base.eval_bracket(&ul(xp), &ul(xq), &ul(xr))?;
                builder.set_bracket(p, q, r, lift(&coef, &br_))?;
            }
        }
    }
    for i in 0..nb {
        for j in i..nb {
            builder.set_amul(i, j, b.eval_amul(&ub(i), &ub(j))?)?;
        }
        for p in 0..n {
            let (bp, xp) = split(p);
            builder.set_action(i, p, lift(&b.eval_amul(&ub(i), &ub(bp))?, &ul(xp)))?;
        }
    }
    validated(builder.build())
}

/// A direct sum with the factor subspaces recorded.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub algebra: Algebra3LR,
    /// Images of the two factors' `L` inside the sum.
    pub l_factors: [Subspace; 2],
    pub a_factors: [Subspace; 2],
}

/// `x ⊕ y` graded by `G_x x G_y`, with every cross product zero. Labels get a
/// `_1` / `_2` suffix.
pub fn direct_sum(x: &Algebra3LR, y: &Algebra3LR) -> Result<DirectSum, CatalogError> {
    let group = x.group().product(y.group());
    let offset = x.group().rank();
    let (lx, ly, ax, ay) = (x.dim_l(), y.dim_l(), x.dim_a(), y.dim_a());
    let basis = |space: Space| -> Result<GradedBasis, ModelError> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (alg, off, tag) in [(x, 0, "_1"), (y, offset, "_2")] {
            let b = alg.basis(space);
            for i in 0..b.len() {
                names.push(format!("{}{tag}", b.label(i)));
                degrees.push(group.embed(b.degree(i), off));
            }
        }
        GradedBasis::new(&group, names, degrees, space)
    };
    let l = basis(Space::L)?;
    let a = basis(Space::A)?;
    let mut b = AlgebraBuilder::new(group, l, a);
    let shift = |v: &Vector, by: usize, len: usize| {
        let mut out = Vector::zeros(len);
        for (i, c) in v.nonzero() {
            out.set(i + by, c.clone());
        }
        out
    };
    for (alg, sl, sa) in [(x, 0, 0), (y, lx, ax)] {
        for (&(i, j, k), v) in alg.bracket_table() {
            b.set_bracket(i + sl, j + sl, k + sl, shift(v, sl, lx + ly))?;
        }
        for (&(i, j), v) in alg.amul_table() {
            b.set_amul(i + sa, j + sa, shift(v, sa, ax + ay))?;
        }
        for (&(i, p), v) in alg.action_table() {
            b.set_action(i + sa, p + sl, shift(v, sl, lx + ly))?;
        }
        for (&(p, q, i), v) in alg.rho_table() {
            b.set_rho(p + sl, q + sl, i + sa, shift(v, sa, ax + ay))?;
        }
    }
    Ok(DirectSum {
        algebra: validated(b.build())?,
        l_factors: [
            Subspace::coordinate(lx + ly, 0..lx),
            Subspace::coordinate(lx + ly, lx..lx + ly),
        ],
        a_factors: [
            Subspace::coordinate(ax + ay, 0..ax),
            Subspace::coordinate(ax + ay, ax..ax + ay),
        ],
    })
}

/// `F[t]/(t^2)` with `deg t` the generator of `Z2`.
pub fn dual_numbers() -> Algebra3LR {
    let g = GroupSpec::new(vec![2]).expect("moduli");
    let degs = vec![g.elem(&[0]).expect("arity"), g.elem(&[1]).expect("arity")];
    commutative_algebra(
        g,
        &["1", "t"],
        degs,
        &[
            ((0, 0), Vector::from_ints(&[1, 0])),
            ((0, 1), Vector::from_ints(&[0, 1])),
        ],
    )
    .expect("valid")
}

/// The group algebra `F[Z2] = span{1, u}`, `u^2 = 1`, graded by `Z2`.
pub fn group_algebra_z2() -> Algebra3LR {
    let g = GroupSpec::new(vec![2]).expect("moduli");
    let degs = vec![g.elem(&[0]).expect("arity"), g.elem(&[1]).expect("arity")];
    commutative_algebra(
        g,
        &["1", "u"],
        degs,
        &[
            ((0, 0), Vector::from_ints(&[1, 0])),
            ((0, 1), Vector::from_ints(&[0, 1])),
            ((1, 1), Vector::from_ints(&[1, 0])),
        ],
    )
    .expect("valid")
}

/// One factor of "tight-pair": `A4 ⊗ F[Z2]`.
pub fn tight_factor() -> Result<Algebra3LR, CatalogError> {
    base_change(&a4(), &group_algebra_z2())
}

/// Two copies of `A4 ⊗ F[Z2]`; the build fails unless the sum is tight.
pub fn tight_pair() -> Result<DirectSum, CatalogError> {
    let f = tight_factor()?;
    let sum = direct_sum(&f, &f)?;
    let alg = &sum.algebra;
    let supports = compute_supports(alg);
    if !check_tight(alg, &supports, &structure_ideals(alg)).tight {
        return Err(CatalogError::NotTight);
    }
    Ok(sum)
}

fn trivial() -> Algebra3LR {
    let g = GroupSpec::trivial();
    let l = GradedBasis::new(&g, vec![], vec![], Space::L).expect("basis");
    let a = GradedBasis::new(&g, vec![], vec![], Space::A).expect("basis");
    AlgebraBuilder::new(g, l, a).build()
}

fn build(name: &str) -> Result<Algebra3LR, CatalogError> {
    match name {
        "trivial" => validated(trivial()),
        "a4" => validated(a4()),
        "gl2-trace" => from_lie_trace(&gl2_seed()),
        "a4-dual-numbers" => base_change(&a4(), &dual_numbers()),
        "tight-pair" => Ok(tight_pair()?.algebra),
        other => Err(CatalogError::Unknown(other.to_string())),
    }
}

/// A named instance; every one passes the axiom suite.
pub fn builtin(name: &str) -> Result<Algebra3LR, CatalogError> {
    static CACHE: OnceLock<Mutex<BTreeMap<String, Algebra3LR>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(alg) = cache.lock().expect("poisoned").get(name) {
        return Ok(alg.clone());
    }
    let alg = build(name)?;
    cache.lock().expect("poisoned").insert(name.to_string(), alg.clone());
    Ok(alg)
}
