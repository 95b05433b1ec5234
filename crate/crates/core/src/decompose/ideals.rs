//! Ideals attached to connection classes and the ideal conditions.

use crate::algebra::{Algebra3LR, Space};
use crate::connections::{compute_supports, ClassKind, ConnectionClass, SupportSets};
use crate::group::GroupElem;
use crate::linalg::{Subspace, Vector};

/// First product found outside the subspace under test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub product: String,
    pub value: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCheck {
    pub holds: bool,
    pub certificate: Option<Certificate>,
}

impl IdealCheck {
    fn ok() -> Self {
        IdealCheck {
            holds: true,
            certificate: None,
        }
    }

    fn fail(product: String, value: Vector) -> Self {
        IdealCheck {
            holds: false,
            certificate: Some(Certificate { product, value }),
        }
    }
}

/// An ideal built from a connection class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCandidate {
    pub side: Space,
    pub representative: GroupElem,
    pub members: Vec<GroupElem>,
    /// Degree-1 part built from products.
    pub identity_part: Subspace,
    /// Sum of the fibers of the class members.
    pub fiber_part: Subspace,
    pub subspace: Subspace,
    pub ideal: IdealCheck,
}

fn add_all(s: &mut Subspace, vs: impl IntoIterator<Item = Vector>) {
    for v in vs {
        s.insert(&v).expect("dimensions");
    }
}

/// `A_{h^-1} L_h`
fn action_block(alg: &Algebra3LR, h: &GroupElem) -> Vec<Vector> {
    let g = alg.group();
    let mut out = Vec::new();
    for a in alg.a().indices_of(&g.neg(h)) {
        for x in alg.l().indices_of(h) {
            out.push(
                alg.eval_action(&alg.unit(Space::A, a), &alg.unit(Space::L, x))
                    .expect("dimensions"),
            );
        }
    }
    out
}

/// `[L_h, L_k, L_{(hk)^-1}]`
fn bracket_block(alg: &Algebra3LR, h: &GroupElem, k: &GroupElem) -> Vec<Vector> {
    let g = alg.group();
    let third = g.neg(&g.op(h, k));
    let mut out = Vec::new();
    for x in alg.l().indices_of(h) {
        for y in alg.l().indices_of(k) {
            for z in alg.l().indices_of(&third) {
                let v = alg
                    .eval_bracket(&alg.unit(Space::L, x), &alg.unit(Space::L, y), &alg.unit(Space::L, z))
                    .expect("dimensions");
                out.push(v);
            }
        }
    }
    out
}

/// `A_{μ^-1} A_μ`
fn product_block(alg: &Algebra3LR, mu: &GroupElem) -> Vec<Vector> {
    let g = alg.group();
    let mut out = Vec::new();
    for a in alg.a().indices_of(&g.neg(mu)) {
        for b in alg.a().indices_of(mu) {
            out.push(
                alg.eval_amul(&alg.unit(Space::A, a), &alg.unit(Space::A, b))
                    .expect("dimensions"),
            );
        }
    }
    out
}

/// `rho(L_h, L_k) A_{(hk)^-1}`
fn rho_block(alg: &Algebra3LR, h: &GroupElem, k: &GroupElem) -> Vec<Vector> {
    let g = alg.group();
    let third = g.neg(&g.op(h, k));
    let mut out = Vec::new();
    for x in alg.l().indices_of(h) {
        for y in alg.l().indices_of(k) {
            for a in alg.a().indices_of(&third) {
                out.push(
                    alg.eval_rho(&alg.unit(Space::L, x), &alg.unit(Space::L, y), &alg.unit(Space::A, a))
                        .expect("dimensions"),
                );
            }
        }
    }
    out
}

/// Degree-1 part of the ideal of a Σ¹-class: `A_{h^-1} L_h` for `h` in the
/// class and in `Λ¹`, plus `[L_h, L_k, L_{(hk)^-1}]` for `h, k` in the class.
pub fn build_l1_class(alg: &Algebra3LR, supports: &SupportSets, class: &ConnectionClass) -> Subspace {
    let mut s = Subspace::zero(alg.dim_l());
    for h in &class.members {
        if supports.lambda1.contains(h) {
            add_all(&mut s, action_block(alg, h));
        }
    }
    for h in &class.members {
        for k in &class.members {
            add_all(&mut s, bracket_block(alg, h, k));
        }
    }
    s
}

/// Degree-1 generation subspace of `L`, the sum over all of `Σ¹`.
pub fn l1_generation(alg: &Algebra3LR, supports: &SupportSets) -> Subspace {
    let mut s = Subspace::zero(alg.dim_l());
    for h in supports.sigma1.intersection(&supports.lambda1) {
        add_all(&mut s, action_block(alg, h));
    }
    for h in &supports.sigma1 {
        for k in &supports.sigma1 {
            add_all(&mut s, bracket_block(alg, h, k));
        }
    }
    s
}

/// Degree-1 part of the ideal of a Λ¹-class.
pub fn build_a1_class(alg: &Algebra3LR, supports: &SupportSets, class: &ConnectionClass) -> Subspace {
    let mut s = Subspace::zero(alg.dim_a());
    for mu in &class.members {
        add_all(&mut s, product_block(alg, mu));
    }
    let hs: Vec<&GroupElem> = class.members.iter().filter(|h| supports.sigma1.contains(*h)).collect();
    for h in &hs {
        for k in &hs {
            add_all(&mut s, rho_block(alg, h, k));
        }
    }
    s
}

/// Degree-1 generation subspace of `A`.
pub fn a1_generation(alg: &Algebra3LR, supports: &SupportSets) -> Subspace {
    let mut s = Subspace::zero(alg.dim_a());
    for mu in &supports.lambda1 {
        add_all(&mut s, product_block(alg, mu));
    }
    let both: Vec<&GroupElem> = supports.lambda1.intersection(&supports.sigma1).collect();
    for h in &both {
        for k in &both {
            add_all(&mut s, rho_block(alg, h, k));
        }
    }
    s
}

fn fibers(alg: &Algebra3LR, space: Space, members: &[GroupElem]) -> Subspace {
    let mut idx = Vec::new();
    for g in members {
        idx.extend(alg.basis(space).indices_of(g));
    }
    Subspace::coordinate(alg.dim(space), idx)
}

pub fn build_i(alg: &Algebra3LR, supports: &SupportSets, class: &ConnectionClass) -> IdealCandidate {
    assert_eq!(class.kind, ClassKind::Sigma);
    let members: Vec<GroupElem> = class.members.iter().cloned().collect();
    let identity_part = build_l1_class(alg, supports, class);
    let fiber_part = fibers(alg, Space::L, &members);
    let subspace = identity_part.sum(&fiber_part).expect("dimensions");
    let ideal = verify_ideal_l(alg, &subspace);
    IdealCandidate {
        side: Space::L,
        representative: class.representative.clone(),
        members,
        identity_part,
        fiber_part,
        subspace,
        ideal,
    }
}

pub fn build_a_ideal(alg: &Algebra3LR, supports: &SupportSets, class: &ConnectionClass) -> IdealCandidate {
    assert_eq!(class.kind, ClassKind::Lambda);
    let members: Vec<GroupElem> = class.members.iter().cloned().collect();
    let identity_part = build_a1_class(alg, supports, class);
    let fiber_part = fibers(alg, Space::A, &members);
    let subspace = identity_part.sum(&fiber_part).expect("dimensions");
    let ideal = verify_ideal_a(alg, &subspace);
    IdealCandidate {
        side: Space::A,
        representative: class.representative.clone(),
        members,
        identity_part,
        fiber_part,
        subspace,
        ideal,
    }
}

/// Convenience wrapper computing supports on the fly.
pub fn ideals_for(alg: &Algebra3LR, classes: &[ConnectionClass]) -> Vec<IdealCandidate> {
    let supports = compute_supports(alg);
    classes
        .iter()
        .map(|c| match c.kind {
            ClassKind::Sigma => build_i(alg, &supports, c),
            ClassKind::Lambda => build_a_ideal(alg, &supports, c),
        })
        .collect()
}

/// `[S, L, L] ⊂ S`, `A S ⊂ S` and `rho(S, S)(A) L ⊂ S` on spanning vectors,
/// with `L` spanned by `ambient` (named by `name`).
pub(crate) fn verify_ideal_within(
    alg: &Algebra3LR,
    s: &Subspace,
    ambient: &[Vector],
    name: &dyn Fn(usize) -> String,
) -> IdealCheck {
    let basis = s.basis();
    let label = |i: usize| format!("s{}", i + 1);
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in ambient.iter().enumerate() {
            for (k, z) in ambient.iter().enumerate().skip(j + 1) {
                let v = alg.eval_bracket(x, y, z).expect("dimensions");
                if !s.contains(&v).expect("dimensions") {
                    return IdealCheck::fail(format!("[{}, {}, {}]", label(i), name(j), name(k)), v);
                }
            }
        }
        for a in 0..alg.dim_a() {
            let v = alg.eval_action(&alg.unit(Space::A, a), x).expect("dimensions");
            if !s.contains(&v).expect("dimensions") {
                return IdealCheck::fail(format!("{} * {}", alg.a().label(a), label(i)), v);
            }
        }
    }
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            for a in 0..alg.dim_a() {
                let r = alg.eval_rho(x, y, &alg.unit(Space::A, a)).expect("dimensions");
                if r.is_zero() {
                    continue;
                }
                for (k, z) in ambient.iter().enumerate() {
                    let v = alg.eval_action(&r, z).expect("dimensions");
                    if !s.contains(&v).expect("dimensions") {
                        return IdealCheck::fail(
                            format!("rho({}, {})({}) * {}", label(i), label(j), alg.a().label(a), name(k)),
                            v,
                        );
                    }
                }
            }
        }
    }
    IdealCheck::ok()
}

pub fn verify_ideal_l(alg: &Algebra3LR, s: &Subspace) -> IdealCheck {
    let units: Vec<Vector> = (0..alg.dim_l()).map(|i| alg.unit(Space::L, i)).collect();
    verify_ideal_within(alg, s, &units, &|i| alg.l().label(i).to_string())
}

pub fn verify_ideal_a(alg: &Algebra3LR, s: &Subspace) -> IdealCheck {
    for (i, x) in s.basis().iter().enumerate() {
        for a in 0..alg.dim_a() {
            let v = alg.eval_amul(&alg.unit(Space::A, a), x).expect("dimensions");
            if !s.contains(&v).expect("dimensions") {
                return IdealCheck::fail(format!("{} * s{}", alg.a().label(a), i + 1), v);
            }
        }
    }
    IdealCheck::ok()
}

/// Distinct ideals of `L` have vanishing triple brackets
/// (`[I, J, K] = 0` and `[I, I, J] = 0`), distinct ideals of `A` multiply to
/// zero.
pub fn verify_triple_orthogonality(alg: &Algebra3LR, l_ideals: &[Subspace], a_ideals: &[Subspace]) -> IdealCheck {
    let bracket_zero = |i: usize, j: usize, k: usize| -> Option<IdealCheck> {
        for u in l_ideals[i].basis() {
            for v in l_ideals[j].basis() {
                for w in l_ideals[k].basis() {
                    let b = alg.eval_bracket(u, v, w).expect("dimensions");
                    if !b.is_zero() {
                        return Some(IdealCheck::fail(format!("[I{}, I{}, I{}]", i + 1, j + 1, k + 1), b));
                    }
                }
            }
        }
        None
    };
    let n = l_ideals.len();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            if let Some(f) = bracket_zero(i, i, j) {
                return f;
            }
        }
        for j in i + 1..n {
            for k in j + 1..n {
                if let Some(f) = bracket_zero(i, j, k) {
                    return f;
                }
            }
        }
    }
    for i in 0..a_ideals.len() {
        for j in i + 1..a_ideals.len() {
            for u in a_ideals[i].basis() {
                for v in a_ideals[j].basis() {
                    let p = alg.eval_amul(u, v).expect("dimensions");
                    if !p.is_zero() {
                        return IdealCheck::fail(format!("J{} * J{}", i + 1, j + 1), p);
                    }
                }
            }
        }
    }
    IdealCheck::ok()
}

/// True when `s` is the sum of its intersections with the degree fibers.
pub fn is_graded(alg: &Algebra3LR, space: Space, s: &Subspace) -> bool {
    let mut total = Subspace::zero(s.ambient());
    for g in alg.degrees_present(space) {
        let part = s.intersect(&alg.fiber(space, &g)).expect("dimensions");
        total = total.sum(&part).expect("dimensions");
    }
    &total == s
}
