//! Machine-readable and text reports.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{Algebra3LR, Space};
use crate::axioms::{run_all, AxiomReport, BasisRef};
use crate::connections::{audit_classes, ConnectionClass, SupportSets};
use crate::decompose::closure::{check_gr_simple_a, check_gr_simple_l, SimplicityVerdict, Verdict};
use crate::decompose::ideals::{is_graded, IdealCandidate, IdealCheck};
use crate::decompose::structure::{a_squared, a_times_l, GMultFailure};
use crate::decompose::{decompose_unchecked, DecompositionReport, FineStatus, SumCheck};
use crate::group::GroupElem;
use crate::linalg::{Subspace, Vector};

pub const SCHEMA: &str = "g3lr-report/1";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

type Elem = Vec<i64>;
type Rows = Vec<Vec<String>>;

fn elem(g: &GroupElem) -> Elem {
    g.coords().to_vec()
}

fn elems<'a>(it: impl IntoIterator<Item = &'a GroupElem>) -> Vec<Elem> {
    it.into_iter().map(elem).collect()
}

fn rows(s: &Subspace) -> Rows {
    s.to_strings()
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub instance: InstanceOut,
    pub axioms: AxiomsOut,
    pub supports: Option<SupportsOut>,
    pub classes: Option<ClassesOut>,
    pub decomposition: Option<DecompositionOut>,
    pub simplicity: Option<SimplicityOut>,
    /// Internal consistency checks that failed; empty unless there is a bug.
    pub invariant_failures: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceOut {
    pub sha256: String,
    pub moduli: Vec<u64>,
    pub dim_l: usize,
    pub dim_a: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomsOut {
    pub pass: bool,
    pub total_violations: usize,
    pub results: Vec<AxiomOut>,
    pub rho_antisymmetry_failures: Vec<[String; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomOut {
    pub axiom: &'static str,
    pub statement: &'static str,
    pub count: usize,
    pub violations: Vec<ViolationOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationOut {
    pub witness: Vec<String>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

fn label(alg: &Algebra3LR, r: &BasisRef) -> String {
    alg.basis(r.space).label(r.index).to_string()
}

pub fn axioms_out(alg: &Algebra3LR, report: &AxiomReport) -> AxiomsOut {
    AxiomsOut {
        pass: report.pass(),
        total_violations: report.total_violations(),
        results: report
            .results
            .iter()
            .map(|r| AxiomOut {
                axiom: r.axiom.name(),
                statement: r.axiom.statement(),
                count: r.count,
                violations: r
                    .violations
                    .iter()
                    .map(|v| ViolationOut {
                        witness: v.witness.iter().map(|w| label(alg, w)).collect(),
                        lhs: v.lhs.to_strings(),
                        rhs: v.rhs.to_strings(),
                    })
                    .collect(),
            })
            .collect(),
        rho_antisymmetry_failures: report
            .rho_antisymmetry_failures
            .iter()
            .map(|n| {
                [
                    alg.l().label(n.x).to_string(),
                    alg.l().label(n.y).to_string(),
                    alg.a().label(n.a).to_string(),
                ]
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SupportsOut {
    pub sigma1: Vec<Elem>,
    pub lambda1: Vec<Elem>,
    pub sigma: Vec<Elem>,
    pub lambda: Vec<Elem>,
    pub sigma1_symmetric: bool,
    pub lambda1_symmetric: bool,
}

fn supports_out(s: &SupportSets) -> SupportsOut {
    SupportsOut {
        sigma1: elems(&s.sigma1),
        lambda1: elems(&s.lambda1),
        sigma: elems(&s.sigma),
        lambda: elems(&s.lambda),
        sigma1_symmetric: s.sigma_symmetric(),
        lambda1_symmetric: s.lambda_symmetric(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassOut {
    pub representative: Elem,
    pub members: Vec<Elem>,
    pub witnesses: Vec<WitnessOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessOut {
    pub member: Elem,
    pub chain: Vec<Elem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassesOut {
    pub sigma: Vec<ClassOut>,
    pub lambda: Vec<ClassOut>,
}

fn class_out(c: &ConnectionClass) -> ClassOut {
    ClassOut {
        representative: elem(&c.representative),
        members: elems(&c.members),
        witnesses: c
            .witnesses
            .iter()
            .map(|(m, chain)| WitnessOut {
                member: elem(m),
                chain: elems(chain),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOut {
    pub holds: bool,
    pub product: Option<String>,
    pub value: Option<Vec<String>>,
}

fn check_out(c: &IdealCheck) -> CheckOut {
    CheckOut {
        holds: c.holds,
        product: c.certificate.as_ref().map(|x| x.product.clone()),
        value: c.certificate.as_ref().map(|x| x.value.to_strings()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictOut {
    pub verdict: &'static str,
    pub reason: String,
    pub witness: Option<Rows>,
}

fn verdict_out(v: &SimplicityVerdict) -> VerdictOut {
    VerdictOut {
        verdict: v.verdict.name(),
        reason: v.reason.clone(),
        witness: v.witness.as_ref().map(rows),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealOut {
    pub representative: Elem,
    pub members: Vec<Elem>,
    pub dim: usize,
    pub identity_part: Rows,
    pub basis: Rows,
    pub graded: bool,
    pub ideal: CheckOut,
    pub gr_simple: VerdictOut,
}

fn ideal_out(alg: &Algebra3LR, c: &IdealCandidate, simple: &SimplicityVerdict) -> IdealOut {
    IdealOut {
        representative: elem(&c.representative),
        members: elems(&c.members),
        dim: c.subspace.dim(),
        identity_part: rows(&c.identity_part),
        basis: rows(&c.subspace),
        graded: is_graded(alg, c.side, &c.subspace),
        ideal: check_out(&c.ideal),
        gr_simple: verdict_out(simple),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SumOut {
    pub applicable: bool,
    pub spans: bool,
    pub dim_sum: usize,
    pub ambient: usize,
    pub direct: bool,
}

fn sum_out(s: &SumCheck) -> SumOut {
    SumOut {
        applicable: s.applicable,
        spans: s.spans,
        dim_sum: s.dim_sum,
        ambient: s.ambient,
        direct: s.direct,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureOut {
    pub center: Rows,
    pub bracket_center: Rows,
    pub ker_rho: Rows,
    pub ann_a: Rows,
    pub ann_l_a: Rows,
    pub ann_a_on_l: Rows,
}

#[derive(Debug, Clone, Serialize)]
pub struct TightnessOut {
    pub center_zero: bool,
    pub ann_a_zero: bool,
    pub ann_l_a_zero: bool,
    pub aa_full: bool,
    pub al_full: bool,
    pub l1_generated: bool,
    pub a1_generated: bool,
    pub tight: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingOut {
    pub verdict: &'static str,
    pub total: bool,
    pub single_valued: bool,
    /// A-ideal indices met by each L-ideal.
    pub partners: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GMultOut {
    pub holds: bool,
    pub failures: Vec<GMultFailureOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GMultFailureOut {
    pub kind: &'static str,
    pub degrees: Vec<Elem>,
}

fn gmult_failure(f: &GMultFailure) -> GMultFailureOut {
    match f {
        GMultFailure::Bracket(g, h, k) => GMultFailureOut {
            kind: "bracket",
            degrees: elems([g, h, k]),
        },
        GMultFailure::Action(l, g) => GMultFailureOut {
            kind: "action",
            degrees: elems([l, g]),
        },
        GMultFailure::Product(l, m) => GMultFailureOut {
            kind: "product",
            degrees: elems([l, m]),
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FineOut {
    pub status: &'static str,
    pub blockers: Vec<String>,
    pub components: Vec<FineComponentOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FineComponentOut {
    pub dim: usize,
    pub basis: Rows,
    pub gr_simple: VerdictOut,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionOut {
    pub vacuous: bool,
    pub l_ideals: Vec<IdealOut>,
    pub a_ideals: Vec<IdealOut>,
    pub u_complement: Rows,
    pub v_complement: Rows,
    pub l_sum: SumOut,
    pub a_sum: SumOut,
    pub orthogonality: CheckOut,
    pub structure: StructureOut,
    pub tightness: TightnessOut,
    pub pairing: PairingOut,
    pub g_multiplicative: GMultOut,
    pub maximal_length: bool,
    pub fine: FineOut,
}

pub fn decomposition_out(alg: &Algebra3LR, r: &DecompositionReport) -> DecompositionOut {
    let t = &r.tightness;
    let s = &r.structure;
    DecompositionOut {
        vacuous: r.vacuous,
        l_ideals: r
            .l_ideals
            .iter()
            .zip(&r.l_ideal_simple)
            .map(|(c, v)| ideal_out(alg, c, v))
            .collect(),
        a_ideals: r
            .a_ideals
            .iter()
            .zip(&r.a_ideal_simple)
            .map(|(c, v)| ideal_out(alg, c, v))
            .collect(),
        u_complement: rows(&r.u_complement),
        v_complement: rows(&r.v_complement),
        l_sum: sum_out(&r.l_sum),
        a_sum: sum_out(&r.a_sum),
        orthogonality: check_out(&r.orthogonality),
        structure: StructureOut {
            center: rows(&s.center),
            bracket_center: rows(&s.bracket_center),
            ker_rho: rows(&s.ker_rho),
            ann_a: rows(&s.ann_a),
            ann_l_a: rows(&s.ann_l_a),
            ann_a_on_l: rows(&s.ann_a_on_l),
        },
        tightness: TightnessOut {
            center_zero: t.center_zero,
            ann_a_zero: t.ann_a_zero,
            ann_l_a_zero: t.ann_l_a_zero,
            aa_full: t.aa_full,
            al_full: t.al_full,
            l1_generated: t.l1_generated,
            a1_generated: t.a1_generated,
            tight: t.tight,
        },
        pairing: PairingOut {
            verdict: r.pairing.verdict.name(),
            total: r.pairing.is_total(),
            single_valued: r.pairing.is_single_valued(),
            partners: r.pairing.partners.clone(),
        },
        g_multiplicative: GMultOut {
            holds: r.g_multiplicative.holds,
            failures: r.g_multiplicative.failures.iter().map(gmult_failure).collect(),
        },
        maximal_length: r.maximal_length,
        fine: FineOut {
            status: r.fine.status.name(),
            blockers: match &r.fine.status {
                FineStatus::NotAttempted(b) => b.clone(),
                _ => Vec::new(),
            },
            components: r
                .fine
                .components
                .iter()
                .map(|c| FineComponentOut {
                    dim: c.subspace.dim(),
                    basis: rows(&c.subspace),
                    gr_simple: verdict_out(&c.simple),
                })
                .collect(),
        },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicityOut {
    pub l: VerdictOut,
    pub a: VerdictOut,
    pub aa_nonzero: bool,
    pub al_nonzero: bool,
}

pub fn simplicity(alg: &Algebra3LR) -> SimplicityOut {
    SimplicityOut {
        l: verdict_out(&check_gr_simple_l(alg)),
        a: verdict_out(&check_gr_simple_a(alg)),
        aa_nonzero: !a_squared(alg).is_zero(),
        al_nonzero: !a_times_l(alg).is_zero(),
    }
}

/// Consistency checks that hold on every valid instance; a failure is a bug.
pub fn invariant_failures(alg: &Algebra3LR, r: &DecompositionReport) -> Vec<String> {
    let mut out = Vec::new();
    out.extend(audit_classes(&r.supports, &r.sigma_classes));
    out.extend(audit_classes(&r.supports, &r.lambda_classes));
    for (side, list) in [("L", &r.l_ideals), ("A", &r.a_ideals)] {
        for (i, c) in list.iter().enumerate() {
            if !c.ideal.holds {
                out.push(format!("{side}-ideal {} is not an ideal", i + 1));
            }
            if !is_graded(alg, c.side, &c.subspace) {
                out.push(format!("{side}-ideal {} is not graded", i + 1));
            }
        }
    }
    if !r.orthogonality.holds {
        out.push("ideals of distinct classes are not orthogonal".to_string());
    }
    if r.l_sum.applicable && !r.l_sum.direct {
        out.push("L is not the direct sum of the complement and the ideals".to_string());
    }
    if r.a_sum.applicable && !r.a_sum.direct {
        out.push("A is not the direct sum of the complement and the ideals".to_string());
    }
    out
}

fn notes(axioms: &AxiomReport, r: Option<&DecompositionReport>) -> Vec<String> {
    let mut out = Vec::new();
    if !axioms.rho_antisymmetry_failures.is_empty() {
        out.push(format!(
            "rho is not antisymmetric on {} basis triples; both argument orders are used as stored",
            axioms.rho_antisymmetry_failures.len()
        ));
    }
    let Some(r) = r else {
        out.push("axiom violations found; no decomposition attempted".to_string());
        return out;
    };
    out.push("ideal test: [S, L, L], A S and rho(S, S)(A) L must all lie in S".to_string());
    out.push("ann_l_a is {x in L : A x = 0}; {a in A : a L = 0} is reported as ann_a_on_l".to_string());
    if r.supports.sigma1.len() > 1 {
        out.push("every two degrees g, h of sigma1 are connected by the chain (g, g^-1, h)".to_string());
    }
    if !r.supports.sigma1.is_empty() {
        out.push("G-multiplicativity bracket clause: [L_g, L_h, L_k] != 0 for pairwise distinct g, h, k".to_string());
    }
    let undetermined = r
        .l_ideal_simple
        .iter()
        .chain(&r.a_ideal_simple)
        .any(|v| v.verdict == Verdict::Undetermined);
    if undetermined {
        out.push("gr-simplicity by homogeneous generators is only conclusive with one-dimensional fibers".to_string());
    }
    if r.tightness.tight && !r.pairing.is_single_valued() {
        out.push("tight instance whose L-ideal meets several A-ideals".to_string());
    }
    out
}

/// Everything the tool knows about an instance. `bytes` is the file content
/// the digest is taken over.
pub fn build_report(alg: &Algebra3LR, bytes: &[u8]) -> Report {
    let axioms = run_all(alg);
    let instance = InstanceOut {
        sha256: sha256_hex(bytes),
        moduli: alg.group().moduli().to_vec(),
        dim_l: alg.dim_l(),
        dim_a: alg.dim_a(),
    };
    let axioms_json = axioms_out(alg, &axioms);
    if !axioms.pass() {
        return Report {
            schema: SCHEMA,
            instance,
            axioms: axioms_json,
            supports: None,
            classes: None,
            decomposition: None,
            simplicity: None,
            invariant_failures: Vec::new(),
            notes: notes(&axioms, None),
        };
    }
    let r = decompose_unchecked(alg);
    Report {
        schema: SCHEMA,
        instance,
        axioms: axioms_json,
        supports: Some(supports_out(&r.supports)),
        classes: Some(ClassesOut {
            sigma: r.sigma_classes.iter().map(class_out).collect(),
            lambda: r.lambda_classes.iter().map(class_out).collect(),
        }),
        decomposition: Some(decomposition_out(alg, &r)),
        simplicity: Some(simplicity(alg)),
        invariant_failures: invariant_failures(alg, &r),
        notes: notes(&axioms, Some(&r)),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn fmt_elem(e: &Elem) -> String {
    format!("({})", e.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
}

fn fmt_elems(es: &[Elem]) -> String {
    es.iter().map(fmt_elem).collect::<Vec<_>>().join(", ")
}

fn fmt_vector(alg: &Algebra3LR, space: Space, v: &Vector) -> String {
    let terms: Vec<String> = v
        .nonzero()
        .map(|(i, c)| format!("{}*{}", crate::linalg::format_rational(c), alg.basis(space).label(i)))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn render_axioms(alg: &Algebra3LR, report: &AxiomReport) -> String {
    let mut s = String::new();
    for r in &report.results {
        let mark = if r.pass() { "ok  " } else { "FAIL" };
        let _ = writeln!(s, "{mark} {:<28} {}", r.axiom.name(), r.count);
        for v in &r.violations {
            let space = r.axiom.value_space();
            let witness: Vec<String> = v.witness.iter().map(|w| label(alg, w)).collect();
            let _ = writeln!(
                s,
                "     at ({}): {} != {}",
                witness.join(", "),
                fmt_vector(alg, space, &v.lhs),
                fmt_vector(alg, space, &v.rhs)
            );
        }
    }
    if !report.rho_antisymmetry_failures.is_empty() {
        let _ = writeln!(
            s,
            "note: rho not antisymmetric on {} triples",
            report.rho_antisymmetry_failures.len()
        );
    }
    let _ = writeln!(
        s,
        "{}: {} violations",
        if report.pass() { "valid" } else { "invalid" },
        report.total_violations()
    );
    s
}

pub fn render_classes(sup: &SupportsOut, classes: &ClassesOut) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "sigma1 = {{{}}}", fmt_elems(&sup.sigma1));
    let _ = writeln!(s, "lambda1 = {{{}}}", fmt_elems(&sup.lambda1));
    for (name, list) in [("sigma", &classes.sigma), ("lambda", &classes.lambda)] {
        let _ = writeln!(s, "{name} classes: {}", list.len());
        for c in list {
            let _ = writeln!(s, "  [{}] = {{{}}}", fmt_elem(&c.representative), fmt_elems(&c.members));
            for w in &c.witnesses {
                let _ = writeln!(s, "    {} via [{}]", fmt_elem(&w.member), fmt_elems(&w.chain));
            }
        }
    }
    s
}

pub fn render_decomposition(d: &DecompositionOut) -> String {
    let mut s = String::new();
    let yn = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(s, "L-ideals: {}", d.l_ideals.len());
    for (i, c) in d.l_ideals.iter().enumerate() {
        let _ = writeln!(
            s,
            "  I{} dim {} ideal {} gr-simple {}",
            i + 1,
            c.dim,
            yn(c.ideal.holds),
            c.gr_simple.verdict
        );
    }
    let _ = writeln!(s, "A-ideals: {}", d.a_ideals.len());
    for (i, c) in d.a_ideals.iter().enumerate() {
        let _ = writeln!(
            s,
            "  J{} dim {} ideal {} gr-simple {}",
            i + 1,
            c.dim,
            yn(c.ideal.holds),
            c.gr_simple.verdict
        );
    }
    let _ = writeln!(s, "dim U = {}, dim V = {}", d.u_complement.len(), d.v_complement.len());
    for (name, sum) in [("L", &d.l_sum), ("A", &d.a_sum)] {
        let _ = writeln!(
            s,
            "{name}: spans {}, dims {}/{}, direct {}, hypotheses {}",
            yn(sum.spans),
            sum.dim_sum,
            sum.ambient,
            yn(sum.direct),
            yn(sum.applicable)
        );
    }
    let _ = writeln!(s, "orthogonal: {}", yn(d.orthogonality.holds));
    let t = &d.tightness;
    let _ = writeln!(
        s,
        "tight: {} (Z=0 {}, Ann(A)=0 {}, Ann_L(A)=0 {}, AA=A {}, AL=L {}, L1 {}, A1 {})",
        yn(t.tight),
        yn(t.center_zero),
        yn(t.ann_a_zero),
        yn(t.ann_l_a_zero),
        yn(t.aa_full),
        yn(t.al_full),
        yn(t.l1_generated),
        yn(t.a1_generated)
    );
    let _ = writeln!(s, "pairing: {} {:?}", d.pairing.verdict, d.pairing.partners);
    let _ = writeln!(
        s,
        "maximal length: {}, G-multiplicative: {} ({} failures)",
        yn(d.maximal_length),
        yn(d.g_multiplicative.holds),
        d.g_multiplicative.failures.len()
    );
    let _ = write!(s, "fine decomposition: {}", d.fine.status);
    if !d.fine.blockers.is_empty() {
        let _ = write!(s, " ({})", d.fine.blockers.join(", "));
    }
    let _ = writeln!(s);
    for (i, c) in d.fine.components.iter().enumerate() {
        let _ = writeln!(
            s,
            "  component {} dim {} gr-simple {}",
            i + 1,
            c.dim,
            c.gr_simple.verdict
        );
    }
    s
}

pub fn render_simplicity(v: &SimplicityOut) -> String {
    format!(
        "L gr-simple: {} ({})\nA gr-simple: {} ({})\nAA != 0: {}\nAL != 0: {}\n",
        v.l.verdict, v.l.reason, v.a.verdict, v.a.reason, v.aa_nonzero, v.al_nonzero
    )
}
