//! Generated ideals and gr-simplicity verdicts.

use crate::algebra::{Algebra3LR, Space};
use crate::linalg::{Subspace, Vector};

/// Homogeneous basis of a graded subspace, fiber by fiber.
pub fn homogeneous_basis(alg: &Algebra3LR, space: Space, s: &Subspace) -> Vec<Vector> {
    let mut out = Vec::new();
    for g in alg.degrees_present(space) {
        let part = s.intersect(&alg.fiber(space, &g)).expect("dimensions");
        out.extend(part.basis().iter().cloned());
    }
    out
}

fn units(alg: &Algebra3LR, space: Space) -> Vec<Vector> {
    (0..alg.dim(space)).map(|i| alg.unit(space, i)).collect()
}

/// Least subspace containing `seeds` and closed under `[S, W, W]`, `A S` and
/// `rho(S, S)(A) W`, where `W` is spanned by `within`.
pub fn ideal_closure_within(alg: &Algebra3LR, seeds: &[Vector], within: &[Vector]) -> Subspace {
    let ua = units(alg, Space::A);
    let mut span = Subspace::zero(alg.dim_l());
    let mut queue: Vec<Vector> = Vec::new();
    let mut done: Vec<Vector> = Vec::new();
    let push = |v: Vector, span: &mut Subspace, queue: &mut Vec<Vector>| {
        if span.insert(&v).expect("dimensions") {
            queue.push(v);
        }
    };
    for v in seeds {
        push(v.clone(), &mut span, &mut queue);
    }
    while let Some(x) = queue.pop() {
        let mut found = Vec::new();
        for (j, y) in within.iter().enumerate() {
            for z in &within[j + 1..] {
                found.push(alg.eval_bracket(&x, y, z).expect("dimensions"));
            }
        }
        for a in &ua {
            found.push(alg.eval_action(a, &x).expect("dimensions"));
        }
        done.push(x);
        let x = done.last().expect("just pushed");
        for y in &done {
            for a in &ua {
                for r in [
                    alg.eval_rho(x, y, a).expect("dimensions"),
                    alg.eval_rho(y, x, a).expect("dimensions"),
                ] {
                    if r.is_zero() {
                        continue;
                    }
                    for w in within {
                        found.push(alg.eval_action(&r, w).expect("dimensions"));
                    }
                }
            }
        }
        for v in found {
            push(v, &mut span, &mut queue);
        }
    }
    span
}

/// Graded ideal of `L` generated by `v`, seeded by its homogeneous components.
pub fn graded_ideal_generated_by(alg: &Algebra3LR, v: &Vector) -> Subspace {
    let seeds: Vec<Vector> = alg.components(Space::L, v).into_values().collect();
    ideal_closure_within(alg, &seeds, &units(alg, Space::L))
}

/// Least subspace of `A` containing `seeds` and closed under multiplication by
/// the span of `within`.
pub fn a_ideal_closure_within(alg: &Algebra3LR, seeds: &[Vector], within: &[Vector]) -> Subspace {
    let mut span = Subspace::zero(alg.dim_a());
    let mut queue: Vec<Vector> = Vec::new();
    for v in seeds {
        if span.insert(v).expect("dimensions") {
            queue.push(v.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for b in within {
            let v = alg.eval_amul(b, &x).expect("dimensions");
            if span.insert(&v).expect("dimensions") {
                queue.push(v);
            }
        }
    }
    span
}

pub fn graded_a_ideal_generated_by(alg: &Algebra3LR, v: &Vector) -> Subspace {
    let seeds: Vec<Vector> = alg.components(Space::A, v).into_values().collect();
    a_ideal_closure_within(alg, &seeds, &units(alg, Space::A))
}

type LinearMap<'a> = Box<dyn Fn(&Vector) -> Vector + 'a>;

/// Largest subspace of `u` mapped into itself by every map in `maps`, each
/// map given as a function on vectors. Any ideal inside `u` lies inside it.
fn largest_stable(u: &Subspace, maps: &[&dyn Fn(&Vector) -> Vector]) -> Subspace {
    let mut s = u.clone();
    loop {
        let images: Vec<Vec<Vector>> = maps.iter().map(|f| s.basis().iter().map(*f).collect()).collect();
        let next = s.preimage_within(&images, &s).expect("dimensions");
        if next.dim() == s.dim() {
            return s;
        }
        s = next;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub verdict: Verdict,
    /// A graded ideal outside the allowed list, when the verdict is "no".
    pub witness: Option<Subspace>,
    pub reason: String,
}

impl SimplicityVerdict {
    fn no(reason: impl Into<String>, witness: Option<Subspace>) -> Self {
        SimplicityVerdict {
            verdict: Verdict::No,
            witness,
            reason: reason.into(),
        }
    }

    fn yes(reason: impl Into<String>) -> Self {
        SimplicityVerdict {
            verdict: Verdict::Yes,
            witness: None,
            reason: reason.into(),
        }
    }

    fn undetermined(reason: impl Into<String>) -> Self {
        SimplicityVerdict {
            verdict: Verdict::Undetermined,
            witness: None,
            reason: reason.into(),
        }
    }
}

/// `{x in W : rho(x, W) = rho(W, x) = 0}`
pub fn ker_rho_within(alg: &Algebra3LR, w: &Subspace) -> Subspace {
    let ua = units(alg, Space::A);
    let mut images = Vec::new();
    for y in w.basis() {
        for a in &ua {
            images.push(
                w.basis()
                    .iter()
                    .map(|x| alg.eval_rho(x, y, a).expect("dimensions"))
                    .collect(),
            );
            images.push(
                w.basis()
                    .iter()
                    .map(|x| alg.eval_rho(y, x, a).expect("dimensions"))
                    .collect(),
            );
        }
    }
    w.preimage_within(&images, &Subspace::zero(alg.dim_a()))
        .expect("dimensions")
}

/// Whether the graded ideal `w` (or all of `L`), viewed as an algebra over
/// `A`, has no graded ideals besides `0`, `w` and its kernel of `rho`.
///
/// Every homogeneous basis vector generates an ideal; one outside the allowed
/// list settles "no". A "yes" needs every non-identity fiber of `w` to be at
/// most one-dimensional, so that each homogeneous vector is a multiple of a
/// tested generator, plus a check that no ideal hides in the identity fiber.
pub fn gr_simple_within(alg: &Algebra3LR, w: &Subspace) -> SimplicityVerdict {
    let one = alg.group().identity();
    let wb = w.basis().to_vec();
    let mut derived = Subspace::zero(alg.dim_l());
    for (i, x) in wb.iter().enumerate() {
        for (j, y) in wb.iter().enumerate().skip(i + 1) {
            for z in &wb[j + 1..] {
                derived
                    .insert(&alg.eval_bracket(x, y, z).expect("dimensions"))
                    .expect("dimensions");
            }
        }
    }
    if derived.is_zero() {
        return SimplicityVerdict::no("the triple bracket vanishes", None);
    }
    let ker = ker_rho_within(alg, w);
    let allowed = |j: &Subspace| j == w || *j == ker || j.is_zero();
    let gens = homogeneous_basis(alg, Space::L, w);
    for v in &gens {
        let j = ideal_closure_within(alg, std::slice::from_ref(v), &wb);
        if !allowed(&j) {
            return SimplicityVerdict::no("a homogeneous generator spans a proper graded ideal", Some(j));
        }
    }
    let fat = alg
        .degrees_present(Space::L)
        .into_iter()
        .filter(|g| *g != one)
        .find(|g| w.intersect(&alg.fiber(Space::L, g)).expect("dimensions").dim() > 1);
    if let Some(g) = fat {
        return SimplicityVerdict::undetermined(format!("fiber of degree {g} has dimension above one"));
    }
    let ua = units(alg, Space::A);
    let mut maps: Vec<LinearMap<'_>> = Vec::new();
    for (i, y) in wb.iter().enumerate() {
        for z in &wb[i + 1..] {
            let (y, z) = (y.clone(), z.clone());
            maps.push(Box::new(move |x: &Vector| {
                alg.eval_bracket(x, &y, &z).expect("dimensions")
            }));
        }
    }
    for a in &ua {
        let a = a.clone();
        maps.push(Box::new(move |x: &Vector| alg.eval_action(&a, x).expect("dimensions")));
    }
    let refs: Vec<&dyn Fn(&Vector) -> Vector> = maps.iter().map(|m| m.as_ref()).collect();
    let w1 = w.intersect(&alg.fiber(Space::L, &one)).expect("dimensions");
    // an ideal other than w has its non-identity part inside ker
    let ker_rest = ker.intersect(&off_identity(alg, Space::L)).expect("dimensions");
    let u = ker_rest.sum(&w1).expect("dimensions");
    let stable = largest_stable(&u, &refs);
    if !stable.is_subspace_of(&ker).expect("dimensions") {
        return SimplicityVerdict::undetermined("an identity-degree subspace may carry an ideal");
    }
    let z = largest_stable(&w1, &refs);
    if z.dim() > 1 {
        return SimplicityVerdict::undetermined("an identity-degree subspace may carry an ideal");
    }
    if let Some(v) = z.basis().first() {
        let j = ideal_closure_within(alg, std::slice::from_ref(v), &wb);
        if !allowed(&j) {
            return SimplicityVerdict::no("an identity-degree vector spans a proper graded ideal", Some(j));
        }
    }
    SimplicityVerdict::yes("every homogeneous generator spans the whole algebra or the kernel of rho")
}

/// Span of all fibers of non-identity degree.
fn off_identity(alg: &Algebra3LR, space: Space) -> Subspace {
    let one = alg.group().identity();
    let basis = alg.basis(space);
    Subspace::coordinate(basis.len(), (0..basis.len()).filter(|&i| *basis.degree(i) != one))
}

pub fn check_gr_simple_l(alg: &Algebra3LR) -> SimplicityVerdict {
    gr_simple_within(alg, &Subspace::full(alg.dim_l()))
}

/// Whether the graded subalgebra `b` of `A` has no graded ideals besides `0`
/// and `b`, with `b b != 0`.
pub fn gr_simple_a_within(alg: &Algebra3LR, b: &Subspace) -> SimplicityVerdict {
    let one = alg.group().identity();
    let bb = b.basis().to_vec();
    let square_zero = bb
        .iter()
        .all(|x| bb.iter().all(|y| alg.eval_amul(x, y).expect("dimensions").is_zero()));
    if square_zero {
        return SimplicityVerdict::no("the product vanishes", None);
    }
    for v in homogeneous_basis(alg, Space::A, b) {
        let j = a_ideal_closure_within(alg, std::slice::from_ref(&v), &bb);
        if j != *b {
            return SimplicityVerdict::no("a homogeneous generator spans a proper graded ideal", Some(j));
        }
    }
    let fat = alg
        .degrees_present(Space::A)
        .into_iter()
        .filter(|g| *g != one)
        .find(|g| b.intersect(&alg.fiber(Space::A, g)).expect("dimensions").dim() > 1);
    if let Some(g) = fat {
        return SimplicityVerdict::undetermined(format!("fiber of degree {g} has dimension above one"));
    }
    let maps: Vec<LinearMap<'_>> = bb
        .iter()
        .map(|y| {
            let y = y.clone();
            Box::new(move |x: &Vector| alg.eval_amul(&y, x).expect("dimensions")) as LinearMap<'_>
        })
        .collect();
    let refs: Vec<&dyn Fn(&Vector) -> Vector> = maps.iter().map(|m| m.as_ref()).collect();
    let b1 = b.intersect(&alg.fiber(Space::A, &one)).expect("dimensions");
    let z = largest_stable(&b1, &refs);
    if z.dim() > 1 {
        return SimplicityVerdict::undetermined("an identity-degree subspace may carry an ideal");
    }
    if let Some(v) = z.basis().first() {
        let j = a_ideal_closure_within(alg, std::slice::from_ref(v), &bb);
        if j != *b {
            return SimplicityVerdict::no("an identity-degree vector spans a proper graded ideal", Some(j));
        }
    }
    SimplicityVerdict::yes("every homogeneous generator spans the whole algebra")
}

pub fn check_gr_simple_a(alg: &Algebra3LR) -> SimplicityVerdict {
    gr_simple_a_within(alg, &Subspace::full(alg.dim_a()))
}
