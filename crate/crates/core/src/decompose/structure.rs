//! Centers, annihilators, tightness and the regularity conditions.

use std::collections::BTreeSet;

use crate::algebra::{Algebra3LR, Space};
use crate::connections::SupportSets;
use crate::group::GroupElem;
use crate::linalg::{solve_homogeneous, Rational, Subspace, Vector};

use super::ideals::{a1_generation, l1_generation, IdealCandidate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureIdeals {
    /// `Z_rho(L) = ker rho ∩ Z(L)`
    pub center: Subspace,
    /// `{x : [x, L, L] = 0}`
    pub bracket_center: Subspace,
    /// `{x : rho(x, L) = rho(L, x) = 0}`
    pub ker_rho: Subspace,
    /// `{a in A : aA = 0}`
    pub ann_a: Subspace,
    /// `{x in L : Ax = 0}`
    pub ann_l_a: Subspace,
    /// `{a in A : aL = 0}`
    pub ann_a_on_l: Subspace,
}

/// Common kernel of the linear maps `e_i -> outputs[i]`, where `outputs[i]`
/// lists the images of the i-th basis vector under every map.
fn common_kernel(n: usize, outputs: &[Vec<Vector>]) -> Subspace {
    let mut constraints = Vec::new();
    let maps = outputs.first().map_or(0, Vec::len);
    for m in 0..maps {
        let width = outputs[0][m].len();
        for c in 0..width {
            let row: Vec<Rational> = (0..n).map(|i| outputs[i][m].get(c).clone()).collect();
            let row = Vector::from_rationals(row);
            if !row.is_zero() {
                constraints.push(row);
            }
        }
    }
    solve_homogeneous(n, &constraints).expect("constraint width")
}

pub fn structure_ideals(alg: &Algebra3LR) -> StructureIdeals {
    let (nl, na) = (alg.dim_l(), alg.dim_a());
    let ul: Vec<Vector> = (0..nl).map(|i| alg.unit(Space::L, i)).collect();
    let ua: Vec<Vector> = (0..na).map(|i| alg.unit(Space::A, i)).collect();

    let bracket_out: Vec<Vec<Vector>> = ul
        .iter()
        .map(|x| {
            let mut out = Vec::new();
            for j in 0..nl {
                for k in j + 1..nl {
                    out.push(alg.eval_bracket(x, &ul[j], &ul[k]).expect("dimensions"));
                }
            }
            out
        })
        .collect();
    let bracket_center = common_kernel(nl, &bracket_out);

    let rho_out: Vec<Vec<Vector>> = ul
        .iter()
        .map(|x| {
            let mut out = Vec::new();
            for y in &ul {
                for a in &ua {
                    out.push(alg.eval_rho(x, y, a).expect("dimensions"));
                    out.push(alg.eval_rho(y, x, a).expect("dimensions"));
                }
            }
            out
        })
        .collect();
    let ker_rho = common_kernel(nl, &rho_out);
    let center = bracket_center.intersect(&ker_rho).expect("dimensions");

    let amul_out: Vec<Vec<Vector>> = ua
        .iter()
        .map(|a| ua.iter().map(|b| alg.eval_amul(a, b).expect("dimensions")).collect())
        .collect();
    let ann_a = common_kernel(na, &amul_out);

    let action_on_x: Vec<Vec<Vector>> = ul
        .iter()
        .map(|x| ua.iter().map(|a| alg.eval_action(a, x).expect("dimensions")).collect())
        .collect();
    let ann_l_a = common_kernel(nl, &action_on_x);

    let action_by_a: Vec<Vec<Vector>> = ua
        .iter()
        .map(|a| ul.iter().map(|x| alg.eval_action(a, x).expect("dimensions")).collect())
        .collect();
    let ann_a_on_l = common_kernel(na, &action_by_a);

    StructureIdeals {
        center,
        bracket_center,
        ker_rho,
        ann_a,
        ann_l_a,
        ann_a_on_l,
    }
}

/// `A A`
pub fn a_squared(alg: &Algebra3LR) -> Subspace {
    let mut s = Subspace::zero(alg.dim_a());
    for v in alg.amul_table().values() {
        s.insert(v).expect("dimensions");
    }
    s
}

/// `A L`
pub fn a_times_l(alg: &Algebra3LR) -> Subspace {
    let mut s = Subspace::zero(alg.dim_l());
    for v in alg.action_table().values() {
        s.insert(v).expect("dimensions");
    }
    s
}

/// `[L, L, L]`
pub fn derived_l(alg: &Algebra3LR) -> Subspace {
    let mut s = Subspace::zero(alg.dim_l());
    for v in alg.bracket_table().values() {
        s.insert(v).expect("dimensions");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessReport {
    pub center_zero: bool,
    pub ann_a_zero: bool,
    pub ann_l_a_zero: bool,
    pub aa_full: bool,
    pub al_full: bool,
    pub l1_generated: bool,
    pub a1_generated: bool,
    pub tight: bool,
    /// Degree-1 fiber of `L` and the part generated by actions and brackets.
    pub l1: Subspace,
    pub l1_generation: Subspace,
    pub a1: Subspace,
    pub a1_generation: Subspace,
}

pub fn check_tight(alg: &Algebra3LR, supports: &SupportSets, structure: &StructureIdeals) -> TightnessReport {
    let one = alg.group().identity();
    let l1 = alg.fiber(Space::L, &one);
    let a1 = alg.fiber(Space::A, &one);
    let l1_generation = l1_generation(alg, supports);
    let a1_generation = a1_generation(alg, supports);
    let center_zero = structure.center.is_zero();
    let ann_a_zero = structure.ann_a.is_zero();
    let ann_l_a_zero = structure.ann_l_a.is_zero();
    let aa_full = a_squared(alg).is_full();
    let al_full = a_times_l(alg).is_full();
    let l1_generated = l1_generation == l1;
    let a1_generated = a1_generation == a1;
    let tight = center_zero && ann_a_zero && ann_l_a_zero && aa_full && al_full && l1_generated && a1_generated;
    TightnessReport {
        center_zero,
        ann_a_zero,
        ann_l_a_zero,
        aa_full,
        al_full,
        l1_generated,
        a1_generated,
        tight,
        l1,
        l1_generation,
        a1,
        a1_generation,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingVerdict {
    /// Every L-ideal meets exactly one A-ideal.
    Unique,
    /// Tight, but some L-ideal meets zero or several A-ideals.
    Violated,
    NotApplicable,
}

impl PairingVerdict {
    pub fn name(self) -> &'static str {
        match self {
            PairingVerdict::Unique => "unique",
            PairingVerdict::Violated => "violated",
            PairingVerdict::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    /// For the i-th L-ideal, the indices of A-ideals with `𝒜 · I != 0`.
    pub partners: Vec<Vec<usize>>,
    pub verdict: PairingVerdict,
}

impl Pairing {
    pub fn is_total(&self) -> bool {
        self.partners.iter().all(|p| !p.is_empty())
    }

    pub fn is_single_valued(&self) -> bool {
        self.partners.iter().all(|p| p.len() <= 1)
    }
}

pub fn pair_ideals(alg: &Algebra3LR, l_ideals: &[IdealCandidate], a_ideals: &[IdealCandidate], tight: bool) -> Pairing {
    let partners: Vec<Vec<usize>> = l_ideals
        .iter()
        .map(|i| {
            a_ideals
                .iter()
                .enumerate()
                .filter(|(_, a)| {
                    a.subspace.basis().iter().any(|u| {
                        i.subspace
                            .basis()
                            .iter()
                            .any(|x| !alg.eval_action(u, x).expect("dimensions").is_zero())
                    })
                })
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let verdict = if !tight {
        PairingVerdict::NotApplicable
    } else if partners.iter().all(|p| p.len() == 1) {
        PairingVerdict::Unique
    } else {
        PairingVerdict::Violated
    };
    Pairing { partners, verdict }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum GMultFailure {
    /// `[L_g, L_h, L_k] = 0` although `ghk` is in `Σ¹`.
    Bracket(GroupElem, GroupElem, GroupElem),
    /// `A_λ L_g = 0` although `λg` is in `Σ¹`.
    Action(GroupElem, GroupElem),
    /// `A_λ A_μ = 0` although `λμ` is in `Λ¹`.
    Product(GroupElem, GroupElem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMultReport {
    pub holds: bool,
    pub failures: Vec<GMultFailure>,
}

fn fiber_units(alg: &Algebra3LR, space: Space, g: &GroupElem) -> Vec<Vector> {
    alg.basis(space)
        .indices_of(g)
        .into_iter()
        .map(|i| alg.unit(space, i))
        .collect()
}

/// The bracket clause ranges over pairwise distinct `g, h, k`.
pub fn check_g_multiplicative(alg: &Algebra3LR, supports: &SupportSets) -> GMultReport {
    let grp = alg.group();
    let mut failures = BTreeSet::new();
    let sigma: Vec<&GroupElem> = supports.sigma1.iter().collect();
    for (a, g) in sigma.iter().enumerate() {
        for (b, h) in sigma.iter().enumerate().skip(a + 1) {
            for k in sigma.iter().skip(b + 1) {
                if !supports.sigma1.contains(&grp.op3(g, h, k)) {
                    continue;
                }
                let (lg, lh, lk) = (
                    fiber_units(alg, Space::L, g),
                    fiber_units(alg, Space::L, h),
                    fiber_units(alg, Space::L, k),
                );
                let nonzero = lg.iter().any(|x| {
                    lh.iter().any(|y| {
                        lk.iter()
                            .any(|z| !alg.eval_bracket(x, y, z).expect("dimensions").is_zero())
                    })
                });
                if !nonzero {
                    failures.insert(GMultFailure::Bracket((*g).clone(), (*h).clone(), (*k).clone()));
                }
            }
        }
    }
    for l in &supports.lambda1 {
        let al = fiber_units(alg, Space::A, l);
        for g in &supports.sigma1 {
            if !supports.sigma1.contains(&grp.op(l, g)) {
                continue;
            }
            let lg = fiber_units(alg, Space::L, g);
            let nonzero = al
                .iter()
                .any(|a| lg.iter().any(|x| !alg.eval_action(a, x).expect("dimensions").is_zero()));
            if !nonzero {
                failures.insert(GMultFailure::Action(l.clone(), g.clone()));
            }
        }
        for m in &supports.lambda1 {
            if !supports.lambda1.contains(&grp.op(l, m)) {
                continue;
            }
            let am = fiber_units(alg, Space::A, m);
            let nonzero = al
                .iter()
                .any(|a| am.iter().any(|b| !alg.eval_amul(a, b).expect("dimensions").is_zero()));
            if !nonzero {
                failures.insert(GMultFailure::Product(l.clone(), m.clone()));
            }
        }
    }
    GMultReport {
        holds: failures.is_empty(),
        failures: failures.into_iter().collect(),
    }
}

/// `dim L_g = 1` on `Σ¹` and `dim A_λ = 1` on `Λ¹`.
pub fn check_maximal_length(alg: &Algebra3LR, supports: &SupportSets) -> bool {
    supports.sigma1.iter().all(|g| alg.l().indices_of(g).len() == 1)
        && supports.lambda1.iter().all(|l| alg.a().indices_of(l).len() == 1)
}
