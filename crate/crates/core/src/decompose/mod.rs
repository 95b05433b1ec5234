//! Ideals of connection classes, regularity conditions and decompositions.

pub mod closure;
pub mod ideals;
pub mod structure;

use std::collections::BTreeSet;

use crate::algebra::{Algebra3LR, Space};
use crate::axioms::{run_all, AxiomReport};
use crate::connections::{compute_supports, lambda_classes, sigma_classes, ConnectionClass, SupportSets};
use crate::group::GroupElem;
use crate::linalg::Subspace;

use closure::{
    gr_simple_a_within, gr_simple_within, homogeneous_basis, ideal_closure_within, SimplicityVerdict, Verdict,
};
use ideals::{build_a_ideal, build_i, verify_ideal_within, verify_triple_orthogonality, IdealCandidate, IdealCheck};
use structure::{
    check_g_multiplicative, check_maximal_length, check_tight, pair_ideals, structure_ideals, GMultReport, Pairing,
    StructureIdeals, TightnessReport,
};

/// `complement + Σ ideals` against the whole space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumCheck {
    /// The hypotheses under which the sum is expected to be direct hold.
    pub applicable: bool,
    pub spans: bool,
    /// `dim complement + Σ dim ideal`
    pub dim_sum: usize,
    pub ambient: usize,
    pub direct: bool,
}

fn sum_check(ambient: usize, complement: &Subspace, parts: &[&Subspace], applicable: bool) -> SumCheck {
    let mut total = complement.clone();
    let mut dim_sum = complement.dim();
    for p in parts {
        total = total.sum(p).expect("dimensions");
        dim_sum += p.dim();
    }
    let spans = total.is_full();
    SumCheck {
        applicable,
        spans,
        dim_sum,
        ambient,
        direct: spans && dim_sum == ambient,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FineComponent {
    pub subspace: Subspace,
    pub simple: SimplicityVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FineStatus {
    /// Some precondition failed; the reasons are listed.
    NotAttempted(Vec<String>),
    /// Every component came out gr-simple.
    Complete,
    /// Some component is not gr-simple and no split was found, or is
    /// undetermined.
    Partial,
}

impl FineStatus {
    pub fn name(&self) -> &'static str {
        match self {
            FineStatus::NotAttempted(_) => "not-attempted",
            FineStatus::Complete => "complete",
            FineStatus::Partial => "partial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FineDecomposition {
    pub status: FineStatus,
    pub components: Vec<FineComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub supports: SupportSets,
    pub sigma_classes: Vec<ConnectionClass>,
    pub lambda_classes: Vec<ConnectionClass>,
    pub l_ideals: Vec<IdealCandidate>,
    pub a_ideals: Vec<IdealCandidate>,
    pub l_ideal_simple: Vec<SimplicityVerdict>,
    pub a_ideal_simple: Vec<SimplicityVerdict>,
    /// Complement of the generated part inside the degree-1 fiber of `L`.
    pub u_complement: Subspace,
    /// Same on the `A` side.
    pub v_complement: Subspace,
    pub l_sum: SumCheck,
    pub a_sum: SumCheck,
    pub orthogonality: IdealCheck,
    pub structure: StructureIdeals,
    pub tightness: TightnessReport,
    pub pairing: Pairing,
    pub g_multiplicative: GMultReport,
    pub maximal_length: bool,
    pub fine: FineDecomposition,
    /// No connection classes at all on the `L` side.
    pub vacuous: bool,
}

/// Runs the axiom suite first and refuses invalid instances.
pub fn decompose(alg: &Algebra3LR) -> Result<DecompositionReport, AxiomReport> {
    let axioms = run_all(alg);
    if !axioms.pass() {
        return Err(axioms);
    }
    Ok(decompose_unchecked(alg))
}

/// Decomposition without the axiom gate; results are meaningless on
/// invalid instances.
pub fn decompose_unchecked(alg: &Algebra3LR) -> DecompositionReport {
    let supports = compute_supports(alg);
    let sigma = sigma_classes(&supports);
    let lambda = lambda_classes(&supports);
    let l_ideals: Vec<IdealCandidate> = sigma.iter().map(|c| build_i(alg, &supports, c)).collect();
    let a_ideals: Vec<IdealCandidate> = lambda.iter().map(|c| build_a_ideal(alg, &supports, c)).collect();
    let l_ideal_simple = l_ideals.iter().map(|i| gr_simple_within(alg, &i.subspace)).collect();
    let a_ideal_simple = a_ideals.iter().map(|i| gr_simple_a_within(alg, &i.subspace)).collect();

    let structure = structure_ideals(alg);
    let tightness = check_tight(alg, &supports, &structure);
    let u_complement = tightness
        .l1_generation
        .complement(&tightness.l1)
        .expect("generation lies in the identity fiber");
    let v_complement = tightness
        .a1_generation
        .complement(&tightness.a1)
        .expect("generation lies in the identity fiber");

    let l_parts: Vec<&Subspace> = l_ideals.iter().map(|i| &i.subspace).collect();
    let a_parts: Vec<&Subspace> = a_ideals.iter().map(|i| &i.subspace).collect();
    let l_sum = sum_check(
        alg.dim_l(),
        &u_complement,
        &l_parts,
        tightness.center_zero && tightness.l1_generated,
    );
    let a_sum = sum_check(
        alg.dim_a(),
        &v_complement,
        &a_parts,
        tightness.ann_a_zero && tightness.a1_generated,
    );
    let l_subs: Vec<Subspace> = l_parts.into_iter().cloned().collect();
    let a_subs: Vec<Subspace> = a_parts.into_iter().cloned().collect();
    let orthogonality = verify_triple_orthogonality(alg, &l_subs, &a_subs);

    let pairing = pair_ideals(alg, &l_ideals, &a_ideals, tightness.tight);
    let g_multiplicative = check_g_multiplicative(alg, &supports);
    let maximal_length = check_maximal_length(alg, &supports);

    let mut blockers = Vec::new();
    if !tightness.tight {
        blockers.push("not tight".to_string());
    }
    if !maximal_length {
        blockers.push("not of maximal length".to_string());
    }
    if !g_multiplicative.holds {
        blockers.push("not G-multiplicative".to_string());
    }
    if !supports.sigma_symmetric() || !supports.lambda_symmetric() {
        blockers.push("supports not closed under inverses".to_string());
    }
    if sigma.len() > 1 {
        blockers.push(format!("{} sigma classes", sigma.len()));
    }
    if l_ideals.is_empty() {
        blockers.push("no sigma classes".to_string());
    }
    let fine = if blockers.is_empty() {
        fine_decomposition(alg, &l_subs)
    } else {
        FineDecomposition {
            status: FineStatus::NotAttempted(blockers),
            components: Vec::new(),
        }
    };

    DecompositionReport {
        vacuous: sigma.is_empty(),
        supports,
        sigma_classes: sigma,
        lambda_classes: lambda,
        l_ideals,
        a_ideals,
        l_ideal_simple,
        a_ideal_simple,
        u_complement,
        v_complement,
        l_sum,
        a_sum,
        orthogonality,
        structure,
        tightness,
        pairing,
        g_multiplicative,
        maximal_length,
        fine,
    }
}

fn fine_decomposition(alg: &Algebra3LR, starts: &[Subspace]) -> FineDecomposition {
    let mut components = Vec::new();
    for w in starts {
        split_recursive(alg, w, &mut components);
    }
    let status = if components.iter().all(|c| c.simple.verdict == Verdict::Yes) {
        FineStatus::Complete
    } else {
        FineStatus::Partial
    };
    FineDecomposition { status, components }
}

fn split_recursive(alg: &Algebra3LR, w: &Subspace, out: &mut Vec<FineComponent>) {
    let simple = gr_simple_within(alg, w);
    if simple.verdict == Verdict::No {
        if let Some((i, j)) = find_split(alg, w) {
            split_recursive(alg, &i, out);
            split_recursive(alg, &j, out);
            return;
        }
    }
    out.push(FineComponent {
        subspace: w.clone(),
        simple,
    });
}

/// Non-identity degrees where `s` has a nonzero part.
pub fn support_of(alg: &Algebra3LR, space: Space, s: &Subspace) -> BTreeSet<GroupElem> {
    let one = alg.group().identity();
    alg.degrees_present(space)
        .into_iter()
        .filter(|g| *g != one && !s.intersect(&alg.fiber(space, g)).expect("dimensions").is_zero())
        .collect()
}

/// Splits `w` as `I ⊕ I'` with both graded ideals of `w`.
///
/// `I` is generated by a homogeneous vector. Two candidates for `I'` are
/// tried on the remaining degrees: the fibers plus the actions landing in the
/// identity degree, then the ideal those fibers generate.
pub fn find_split(alg: &Algebra3LR, w: &Subspace) -> Option<(Subspace, Subspace)> {
    let grp = alg.group();
    let one = grp.identity();
    let wb = w.basis().to_vec();
    let names = |i: usize| format!("w{}", i + 1);
    let support_w = support_of(alg, Space::L, w);
    let supports = compute_supports(alg);
    for v in homogeneous_basis(alg, Space::L, w) {
        if alg.homogeneous_degree(Space::L, &v) == Some(one.clone()) {
            continue;
        }
        let i = ideal_closure_within(alg, std::slice::from_ref(&v), &wb);
        if i == *w {
            continue;
        }
        let sigma_i = support_of(alg, Space::L, &i);
        let rest: Vec<GroupElem> = support_w.difference(&sigma_i).cloned().collect();
        if rest.is_empty() {
            continue;
        }
        let mut fibers = Subspace::zero(alg.dim_l());
        for g in &rest {
            fibers = fibers
                .sum(&w.intersect(&alg.fiber(Space::L, g)).expect("dimensions"))
                .expect("dimensions");
        }
        let mut formula = fibers.clone();
        for g in &supports.lambda1 {
            let back = grp.neg(g);
            if !rest.contains(&back) {
                continue;
            }
            for a in alg.a().indices_of(g) {
                for x in fibers
                    .intersect(&alg.fiber(Space::L, &back))
                    .expect("dimensions")
                    .basis()
                {
                    let y = alg.eval_action(&alg.unit(Space::A, a), x).expect("dimensions");
                    formula.insert(&y).expect("dimensions");
                }
            }
        }
        let generated = ideal_closure_within(alg, fibers.basis(), &wb);
        for j in [formula, generated] {
            if !verify_ideal_within(alg, &j, &wb, &names).holds {
                continue;
            }
            if !i.intersect(&j).expect("dimensions").is_zero() {
                continue;
            }
            if i.sum(&j).expect("dimensions") == *w {
                return Some((i, j));
            }
        }
    }
    None
}
