//! Axiom checks for graded 3-Lie-Rinehart algebras.
//!
//! Every check runs over basis tuples only. All identities involved are
//! multilinear in their arguments, so holding on basis vectors is the same as
//! holding on all vectors, and a passing check is a proof for the instance.

use std::fmt;

use crate::algebra::{Algebra3LR, Space};
use crate::linalg::{Rational, Vector};

/// Violations kept per axiom in a report; the full count is always kept.
pub const VIOLATION_CAP: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    FundamentalIdentity,
    RepresentationCommutator,
    RepresentationProduct,
    RhoDerivation,
    RinehartAction,
    RinehartLeft,
    RinehartRight,
    AAssociativity,
    ModuleAssociativity,
    GradingBracket,
    GradingProduct,
    GradingAction,
    GradingRho,
}

impl AxiomId {
    pub const ALL: [AxiomId; 13] = [
        AxiomId::FundamentalIdentity,
        AxiomId::RepresentationCommutator,
        AxiomId::RepresentationProduct,
        AxiomId::RhoDerivation,
        AxiomId::RinehartAction,
        AxiomId::RinehartLeft,
        AxiomId::RinehartRight,
        AxiomId::AAssociativity,
        AxiomId::ModuleAssociativity,
        AxiomId::GradingBracket,
        AxiomId::GradingProduct,
        AxiomId::GradingAction,
        AxiomId::GradingRho,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::FundamentalIdentity => "fundamental_identity",
            AxiomId::RepresentationCommutator => "representation_commutator",
            AxiomId::RepresentationProduct => "representation_product",
            AxiomId::RhoDerivation => "rho_derivation",
            AxiomId::RinehartAction => "rinehart_action",
            AxiomId::RinehartLeft => "rinehart_rho_left",
            AxiomId::RinehartRight => "rinehart_rho_right",
            AxiomId::AAssociativity => "a_associativity",
            AxiomId::ModuleAssociativity => "module_associativity",
            AxiomId::GradingBracket => "grading_bracket",
            AxiomId::GradingProduct => "grading_product",
            AxiomId::GradingAction => "grading_action",
            AxiomId::GradingRho => "grading_rho",
        }
    }

    /// Space the two sides of a violation live in.
    pub fn value_space(self) -> Space {
        match self {
            AxiomId::FundamentalIdentity
            | AxiomId::RinehartAction
            | AxiomId::ModuleAssociativity
            | AxiomId::GradingBracket
            | AxiomId::GradingAction => Space::L,
            _ => Space::A,
        }
    }

    /// The identity being checked, in plain notation.
    pub fn statement(self) -> &'static str {
        match self {
            AxiomId::FundamentalIdentity => {
                "[[x1,x2,x3],y1,y2] = [[x1,y1,y2],x2,x3] + [[x2,y1,y2],x3,x1] + [[x3,y1,y2],x1,x2]"
            }
            AxiomId::RepresentationCommutator => "[rho(x1,x2), rho(x3,x4)] = rho([x1,x2,x3],x4) - rho([x1,x2,x4],x3)",
            AxiomId::RepresentationProduct => {
                "rho([x1,x2,x3],x4) = rho(x1,x2)rho(x3,x4) + rho(x2,x3)rho(x1,x4) + rho(x3,x1)rho(x2,x4)"
            }
            AxiomId::RhoDerivation => "rho(x,y)(ab) = (rho(x,y)a)b + a(rho(x,y)b)",
            AxiomId::RinehartAction => "[x,y,az] = a[x,y,z] + (rho(x,y)a)z",
            AxiomId::RinehartLeft => "rho(ax,y) = a rho(x,y)",
            AxiomId::RinehartRight => "rho(x,ay) = a rho(x,y)",
            AxiomId::AAssociativity => "(ab)c = a(bc)",
            AxiomId::ModuleAssociativity => "(ab)x = a(bx)",
            AxiomId::GradingBracket => "[L_g,L_h,L_k] in L_ghk",
            AxiomId::GradingProduct => "A_g A_h in A_gh",
            AxiomId::GradingAction => "A_h L_g in L_hg",
            AxiomId::GradingRho => "rho(L_g,L_g')(A_h) in A_gg'h",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisRef {
    pub space: Space,
    pub index: usize,
}

fn lref(index: usize) -> BasisRef {
    BasisRef { space: Space::L, index }
}

fn aref(index: usize) -> BasisRef {
    BasisRef { space: Space::A, index }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: AxiomId,
    /// Basis elements, in the order they appear in the identity.
    pub witness: Vec<BasisRef>,
    pub lhs: Vector,
    pub rhs: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: AxiomId,
    pub count: usize,
    pub violations: Vec<Violation>,
}

impl AxiomResult {
    pub fn pass(&self) -> bool {
        self.count == 0
    }
}

/// `rho(x, y) a != -rho(y, x) a` on basis elements. Recorded, never an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntisymmetryNote {
    pub x: usize,
    pub y: usize,
    pub a: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
    pub rho_antisymmetry_failures: Vec<AntisymmetryNote>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.results.iter().all(AxiomResult::pass)
    }

    pub fn total_violations(&self) -> usize {
        self.results.iter().map(|r| r.count).sum()
    }

    pub fn result(&self, id: AxiomId) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == id)
    }

    pub fn failing(&self) -> Vec<AxiomId> {
        self.results.iter().filter(|r| !r.pass()).map(|r| r.axiom).collect()
    }
}

fn record(out: &mut Vec<Violation>, axiom: AxiomId, witness: Vec<BasisRef>, lhs: Vector, rhs: Vector) {
    if lhs != rhs {
        out.push(Violation {
            axiom,
            witness,
            lhs,
            rhs,
        });
    }
}

/// `sum_b v_b * cols[b]`
fn combine(cols: &[Vector], v: &Vector, len: usize) -> Vector {
    let mut out = Vector::zeros(len);
    for (b, c) in v.nonzero() {
        out.add_scaled(c, &cols[b]);
    }
    out
}

/// Precomputed basis values shared by the checks.
struct Tables<'a> {
    alg: &'a Algebra3LR,
    n: usize,
    m: usize,
    /// `rho_ops[x * n + y][a] = rho(e_x, e_y) e_a`
    rho_ops: Vec<Vec<Vector>>,
}

impl<'a> Tables<'a> {
    fn new(alg: &'a Algebra3LR) -> Self {
        let n = alg.dim_l();
        let m = alg.dim_a();
        let mut rho_ops = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                rho_ops.push((0..m).map(|a| sparse_vec(m, alg.rho_basis(x, y, a))).collect());
            }
        }
        Tables { alg, n, m, rho_ops }
    }

    fn bracket(&self, i: usize, j: usize, k: usize) -> Vector {
        sparse_vec(self.n, self.alg.bracket_basis(i, j, k))
    }

    fn op(&self, x: usize, y: usize) -> &[Vector] {
        &self.rho_ops[x * self.n + y]
    }

    /// `rho(v, e_y)` as columns, for a general first argument.
    fn op_first(&self, v: &Vector, y: usize) -> Vec<Vector> {
        (0..self.m)
            .map(|a| {
                let mut out = Vector::zeros(self.m);
                for (x, c) in v.nonzero() {
                    out.add_scaled(c, &self.op(x, y)[a]);
                }
                out
            })
            .collect()
    }

    fn apply(&self, op: &[Vector], v: &Vector) -> Vector {
        combine(op, v, self.m)
    }

    fn rho_is_zero(&self) -> bool {
        self.alg.rho_table().is_empty()
    }
}

fn sparse_vec(len: usize, entry: &[(usize, Rational)]) -> Vector {
    let mut v = Vector::zeros(len);
    for (i, c) in entry {
        v.set(*i, c.clone());
    }
    v
}

/// Checks the fundamental identity on `x1 < x2 < x3`, `y1 < y2`.
///
/// Both sides are alternating in the `x`s and in the `y`s (the bracket is),
/// so the increasing tuples cover every basis 5-tuple up to sign.
pub fn check_fundamental_identity(alg: &Algebra3LR) -> Vec<Violation> {
    let t = Tables::new(alg);
    let n = t.n;
    let mut out = Vec::new();
    if alg.bracket_table().is_empty() {
        return out;
    }
    for y1 in 0..n {
        for y2 in y1 + 1..n {
            // d[x] = [e_x, y1, y2]
            let d: Vec<Vector> = (0..n).map(|x| t.bracket(x, y1, y2)).collect();
            for x1 in 0..n {
                for x2 in x1 + 1..n {
                    for x3 in x2 + 1..n {
                        let inner = t.bracket(x1, x2, x3);
                        let lhs = combine(&d, &inner, n);
                        let mut rhs = alg
                            .eval_bracket(&d[x1], &alg.unit(Space::L, x2), &alg.unit(Space::L, x3))
                            .expect("dimensions");
                        rhs = rhs.sum(
                            &alg.eval_bracket(&d[x2], &alg.unit(Space::L, x3), &alg.unit(Space::L, x1))
                                .expect("dimensions"),
                        );
                        rhs = rhs.sum(
                            &alg.eval_bracket(&d[x3], &alg.unit(Space::L, x1), &alg.unit(Space::L, x2))
                                .expect("dimensions"),
                        );
                        record(
                            &mut out,
                            AxiomId::FundamentalIdentity,
                            vec![lref(x1), lref(x2), lref(x3), lref(y1), lref(y2)],
                            lhs,
                            rhs,
                        );
                    }
                }
            }
        }
    }
    out
}

/// Both operator identities of a representation, applied to every basis
/// vector of `A`. No antisymmetry of `rho` is assumed, so all ordered
/// 4-tuples are enumerated.
pub fn check_representation(alg: &Algebra3LR) -> Vec<Violation> {
    let t = Tables::new(alg);
    let (n, m) = (t.n, t.m);
    let mut out = Vec::new();
    if t.rho_is_zero() {
        return out;
    }
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                let b123 = t.bracket(x1, x2, x3);
                let r_b123: Vec<Vec<Vector>> = (0..n).map(|x4| t.op_first(&b123, x4)).collect();
                for x4 in 0..n {
                    let b124 = t.bracket(x1, x2, x4);
                    let r_b124_3 = t.op_first(&b124, x3);
                    for a in 0..m {
                        let ea = alg.unit(Space::A, a);
                        let witness = vec![lref(x1), lref(x2), lref(x3), lref(x4), aref(a)];
                        // commutator form
                        let p = t.apply(t.op(x1, x2), &t.op(x3, x4)[a]);
                        let q = t.apply(t.op(x3, x4), &t.op(x1, x2)[a]);
                        let lhs = p.difference(&q);
                        let rhs = t.apply(&r_b123[x4], &ea).difference(&t.apply(&r_b124_3, &ea));
                        record(&mut out, AxiomId::RepresentationCommutator, witness.clone(), lhs, rhs);
                        // product form
                        let lhs = t.apply(&r_b123[x4], &ea);
                        let rhs = p
                            .sum(&t.apply(t.op(x2, x3), &t.op(x1, x4)[a]))
                            .sum(&t.apply(t.op(x3, x1), &t.op(x2, x4)[a]));
                        record(&mut out, AxiomId::RepresentationProduct, witness, lhs, rhs);
                    }
                }
            }
        }
    }
    sort_by_axiom(out)
}

fn sort_by_axiom(mut v: Vec<Violation>) -> Vec<Violation> {
    v.sort_by_key(|x| x.axiom);
    v
}

/// `[x,y,az] = a[x,y,z] + (rho(x,y)a)z` and `rho(ax,y) = rho(x,ay) = a rho(x,y)`.
pub fn check_rinehart_compat(alg: &Algebra3LR) -> Vec<Violation> {
    let t = Tables::new(alg);
    let (n, m) = (t.n, t.m);
    let mut out = Vec::new();
    let l = |i| alg.unit(Space::L, i);
    let av = |i| alg.unit(Space::A, i);
    for x in 0..n {
        for y in 0..n {
            if x == y && t.rho_is_zero() {
                continue;
            }
            for a in 0..m {
                let rxya = t.op(x, y)[a].clone();
                for z in 0..n {
                    let az = alg.eval_action(&av(a), &l(z)).expect("dimensions");
                    let lhs = alg.eval_bracket(&l(x), &l(y), &az).expect("dimensions");
                    let xyz = t.bracket(x, y, z);
                    let rhs = alg
                        .eval_action(&av(a), &xyz)
                        .expect("dimensions")
                        .sum(&alg.eval_action(&rxya, &l(z)).expect("dimensions"));
                    record(
                        &mut out,
                        AxiomId::RinehartAction,
                        vec![lref(x), lref(y), aref(a), lref(z)],
                        lhs,
                        rhs,
                    );
                }
            }
        }
    }
    for x in 0..n {
        let ax: Vec<Vector> = (0..m)
            .map(|a| alg.eval_action(&av(a), &l(x)).expect("dimensions"))
            .collect();
        for y in 0..n {
            let ay: Vec<Vector> = (0..m)
                .map(|a| alg.eval_action(&av(a), &l(y)).expect("dimensions"))
                .collect();
            for a in 0..m {
                let left = t.op_first(&ax[a], y);
                let right: Vec<Vector> = (0..m)
                    .map(|b| alg.eval_rho(&l(x), &ay[a], &av(b)).expect("dimensions"))
                    .collect();
                for b in 0..m {
                    let scaled = alg.eval_amul(&av(a), &t.op(x, y)[b]).expect("dimensions");
                    let witness = vec![aref(a), lref(x), lref(y), aref(b)];
                    record(
                        &mut out,
                        AxiomId::RinehartLeft,
                        witness.clone(),
                        left[b].clone(),
                        scaled.clone(),
                    );
                    record(&mut out, AxiomId::RinehartRight, witness, right[b].clone(), scaled);
                }
            }
        }
    }
    sort_by_axiom(out)
}

/// `rho(x,y)` is a derivation of `A`.
pub fn check_rho_derivation(alg: &Algebra3LR) -> Vec<Violation> {
    let t = Tables::new(alg);
    let (n, m) = (t.n, t.m);
    let mut out = Vec::new();
    if t.rho_is_zero() {
        return out;
    }
    let av = |i| alg.unit(Space::A, i);
    for x in 0..n {
        for y in 0..n {
            let op = t.op(x, y);
            for a in 0..m {
                for b in a..m {
                    let ab = alg.eval_amul(&av(a), &av(b)).expect("dimensions");
                    let lhs = t.apply(op, &ab);
                    let rhs = alg
                        .eval_amul(&op[a], &av(b))
                        .expect("dimensions")
                        .sum(&alg.eval_amul(&av(a), &op[b]).expect("dimensions"));
                    record(
                        &mut out,
                        AxiomId::RhoDerivation,
                        vec![lref(x), lref(y), aref(a), aref(b)],
                        lhs,
                        rhs,
                    );
                }
            }
        }
    }
    out
}

/// Associativity of `A` and the module law `(ab)x = a(bx)`.
pub fn check_a_algebra(alg: &Algebra3LR) -> Vec<Violation> {
    let n = alg.dim_l();
    let m = alg.dim_a();
    let mut out = Vec::new();
    let av = |i| alg.unit(Space::A, i);
    let prod: Vec<Vec<Vector>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| alg.eval_amul(&av(a), &av(b)).expect("dimensions"))
                .collect()
        })
        .collect();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let lhs = alg.eval_amul(&prod[a][b], &av(c)).expect("dimensions");
                let rhs = alg.eval_amul(&av(a), &prod[b][c]).expect("dimensions");
                record(
                    &mut out,
                    AxiomId::AAssociativity,
                    vec![aref(a), aref(b), aref(c)],
                    lhs,
                    rhs,
                );
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            for x in 0..n {
                let ex = alg.unit(Space::L, x);
                let lhs = alg.eval_action(&prod[a][b], &ex).expect("dimensions");
                let bx = alg.eval_action(&av(b), &ex).expect("dimensions");
                let rhs = alg.eval_action(&av(a), &bx).expect("dimensions");
                record(
                    &mut out,
                    AxiomId::ModuleAssociativity,
                    vec![aref(a), aref(b), lref(x)],
                    lhs,
                    rhs,
                );
            }
        }
    }
    out
}

/// Every stored structure constant lies in the fiber its degrees dictate.
/// `lhs` is the stored value, `rhs` its component in the allowed fiber.
pub fn check_grading(alg: &Algebra3LR) -> Vec<Violation> {
    let g = alg.group();
    let ld = |i: usize| alg.l().degree(i);
    let ad = |i: usize| alg.a().degree(i);
    let mut out = Vec::new();
    let mut check = |axiom, witness, value: &Vector, target, space| {
        let allowed = alg
            .components(space, value)
            .remove(&target)
            .unwrap_or_else(|| Vector::zeros(value.len()));
        record(&mut out, axiom, witness, value.clone(), allowed);
    };
    for (&(i, j, k), v) in alg.bracket_table() {
        let target = g.op3(ld(i), ld(j), ld(k));
        check(
            AxiomId::GradingBracket,
            vec![lref(i), lref(j), lref(k)],
            v,
            target,
            Space::L,
        );
    }
    for (&(i, j), v) in alg.amul_table() {
        check(
            AxiomId::GradingProduct,
            vec![aref(i), aref(j)],
            v,
            g.op(ad(i), ad(j)),
            Space::A,
        );
    }
    for (&(a, x), v) in alg.action_table() {
        check(
            AxiomId::GradingAction,
            vec![aref(a), lref(x)],
            v,
            g.op(ad(a), ld(x)),
            Space::L,
        );
    }
    for (&(x, y, a), v) in alg.rho_table() {
        check(
            AxiomId::GradingRho,
            vec![lref(x), lref(y), aref(a)],
            v,
            g.op3(ld(x), ld(y), ad(a)),
            Space::A,
        );
    }
    sort_by_axiom(out)
}

/// Basis triples where `rho(x,y)a + rho(y,x)a != 0`.
pub fn rho_antisymmetry_failures(alg: &Algebra3LR) -> Vec<AntisymmetryNote> {
    let n = alg.dim_l();
    let m = alg.dim_a();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x..n {
            for a in 0..m {
                let p = sparse_vec(m, alg.rho_basis(x, y, a));
                let q = sparse_vec(m, alg.rho_basis(y, x, a));
                if !p.sum(&q).is_zero() {
                    out.push(AntisymmetryNote { x, y, a });
                }
            }
        }
    }
    out
}

/// Runs every check. Pass iff no violation of any kind.
pub fn run_all(alg: &Algebra3LR) -> AxiomReport {
    let mut all = Vec::new();
    all.extend(check_fundamental_identity(alg));
    all.extend(check_representation(alg));
    all.extend(check_rinehart_compat(alg));
    all.extend(check_rho_derivation(alg));
    all.extend(check_a_algebra(alg));
    all.extend(check_grading(alg));
    let results = AxiomId::ALL
        .iter()
        .map(|&id| {
            let mine: Vec<Violation> = all.iter().filter(|v| v.axiom == id).cloned().collect();
            AxiomResult {
                axiom: id,
                count: mine.len(),
                violations: mine.into_iter().take(VIOLATION_CAP).collect(),
            }
        })
        .collect();
    AxiomReport {
        results,
        rho_antisymmetry_failures: rho_antisymmetry_failures(alg),
    }
}
