//! Supports of the grading and the connection relations on them.
//!
//! A Σ¹-connection from `g` to `h` is a chain `g_1, ..., g_{2n+1}` of elements
//! of `Σ ∪ Λ ∪ {1}` with `g_1 = g`, every odd partial product
//! `g_1 g_2 g_3, ..., g_1 ... g_{2n-1}` in `Σ`, and the full product in
//! `{h, h^-1}`. A Λ¹-connection uses single steps: `λ_1 = λ`, every proper
//! partial product in `Λ`, and the full product in `{μ, μ^-1}`.
//!
//! Both relations are searched breadth-first. States are partial products,
//! which must lie in the finite set `Σ` (resp. `Λ`) except for the final
//! one, and each state is expanded once, so the search terminates. Because
//! `h` and `h^-1` themselves lie in `Σ`, a connection exists exactly when the
//! search from `g` reaches `h` or `h^-1`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::algebra::{Algebra3LR, Space};
use crate::group::{GroupElem, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("{elem} is not in {support}")]
    NotInSupport { elem: GroupElem, support: &'static str },
    #[error("{0} does not conform to the grading group")]
    Foreign(GroupElem),
    #[error("the identity cannot be a support element")]
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    Sigma,
    Lambda,
}

impl ClassKind {
    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Sigma => "sigma",
            ClassKind::Lambda => "lambda",
        }
    }
}

/// `Σ¹`, `Λ¹` and their closures under inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSets {
    group: GroupSpec,
    pub sigma1: BTreeSet<GroupElem>,
    pub lambda1: BTreeSet<GroupElem>,
    pub sigma: BTreeSet<GroupElem>,
    pub lambda: BTreeSet<GroupElem>,
}

impl SupportSets {
    /// Builds supports from explicit sets; used for synthetic tests.
    pub fn from_sets(
        group: GroupSpec,
        sigma1: impl IntoIterator<Item = GroupElem>,
        lambda1: impl IntoIterator<Item = GroupElem>,
    ) -> Result<Self, ConnectionError> {
        let check = |s: BTreeSet<GroupElem>| -> Result<BTreeSet<GroupElem>, ConnectionError> {
            for g in &s {
                if !group.conforms(g) {
                    return Err(ConnectionError::Foreign(g.clone()));
                }
                if group.is_identity(g) {
                    return Err(ConnectionError::Identity);
                }
            }
            Ok(s)
        };
        let sigma1 = check(sigma1.into_iter().collect())?;
        let lambda1 = check(lambda1.into_iter().collect())?;
        let close = |s: &BTreeSet<GroupElem>| {
            s.iter()
                .flat_map(|g| [g.clone(), group.neg(g)])
                .collect::<BTreeSet<_>>()
        };
        let sigma = close(&sigma1);
        let lambda = close(&lambda1);
        Ok(SupportSets {
            group,
            sigma1,
            lambda1,
            sigma,
            lambda,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Transition alphabet `Σ ∪ Λ ∪ {1}`, sorted.
    pub fn alphabet(&self) -> Vec<GroupElem> {
        let mut out: BTreeSet<GroupElem> = self.sigma.union(&self.lambda).cloned().collect();
        out.insert(self.group.identity());
        out.into_iter().collect()
    }

    /// `Σ¹ = (Σ¹)^-1`
    pub fn sigma_symmetric(&self) -> bool {
        self.sigma1 == self.sigma
    }

    pub fn lambda_symmetric(&self) -> bool {
        self.lambda1 == self.lambda
    }

    pub fn inverse(&self, g: &GroupElem) -> GroupElem {
        self.group.neg(g)
    }
}

/// Degrees `g != 1` with a nonzero fiber, on both sides.
pub fn compute_supports(alg: &Algebra3LR) -> SupportSets {
    let g = alg.group();
    let nontrivial = |space| {
        alg.degrees_present(space)
            .into_iter()
            .filter(|d| !g.is_identity(d))
            .collect::<Vec<_>>()
    };
    SupportSets::from_sets(g.clone(), nontrivial(Space::L), nontrivial(Space::A)).expect("basis degrees conform")
}

/// Shortest chains from `start` to every reachable state.
///
/// `steps` is the number of alphabet letters consumed per move (2 for Σ, 1
/// for Λ); states outside `allowed` are never expanded.
fn search(
    supports: &SupportSets,
    start: &GroupElem,
    allowed: &BTreeSet<GroupElem>,
    steps: usize,
) -> BTreeMap<GroupElem, Vec<GroupElem>> {
    let group = &supports.group;
    let alphabet = supports.alphabet();
    let mut chains: BTreeMap<GroupElem, Vec<GroupElem>> = BTreeMap::new();
    chains.insert(start.clone(), vec![start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(s) = queue.pop_front() {
        let base = chains[&s].clone();
        let mut moves: Vec<(GroupElem, Vec<GroupElem>)> = Vec::new();
        if steps == 1 {
            for u in &alphabet {
                moves.push((group.op(&s, u), vec![u.clone()]));
            }
        } else {
            for u in &alphabet {
                let su = group.op(&s, u);
                for v in &alphabet {
                    moves.push((group.op(&su, v), vec![u.clone(), v.clone()]));
                }
            }
        }
        for (t, letters) in moves {
            if chains.contains_key(&t) || !allowed.contains(&t) {
                continue;
            }
            let mut chain = base.clone();
            chain.extend(letters);
            chains.insert(t.clone(), chain);
            queue.push_back(t);
        }
    }
    chains
}

fn pick_chain(
    chains: &BTreeMap<GroupElem, Vec<GroupElem>>,
    h: &GroupElem,
    h_inv: &GroupElem,
) -> Option<Vec<GroupElem>> {
    match (chains.get(h), chains.get(h_inv)) {
        (Some(a), Some(b)) => Some(if b.len() < a.len() { b.clone() } else { a.clone() }),
        (Some(a), None) => Some(a.clone()),
        (None, Some(b)) => Some(b.clone()),
        (None, None) => None,
    }
}

fn require(set: &BTreeSet<GroupElem>, g: &GroupElem, support: &'static str) -> Result<(), ConnectionError> {
    if set.contains(g) {
        Ok(())
    } else {
        Err(ConnectionError::NotInSupport {
            elem: g.clone(),
            support,
        })
    }
}

/// A shortest Σ¹-connection from `g` to `h`, if any.
pub fn sigma_connected(
    supports: &SupportSets,
    g: &GroupElem,
    h: &GroupElem,
) -> Result<Option<Vec<GroupElem>>, ConnectionError> {
    require(&supports.sigma1, g, "sigma1")?;
    require(&supports.sigma1, h, "sigma1")?;
    let chains = search(supports, g, &supports.sigma, 2);
    Ok(pick_chain(&chains, h, &supports.inverse(h)))
}

/// A shortest Λ¹-connection from `l` to `m`, if any.
pub fn lambda_connected(
    supports: &SupportSets,
    l: &GroupElem,
    m: &GroupElem,
) -> Result<Option<Vec<GroupElem>>, ConnectionError> {
    require(&supports.lambda1, l, "lambda1")?;
    require(&supports.lambda1, m, "lambda1")?;
    let chains = search(supports, l, &supports.lambda, 1);
    Ok(pick_chain(&chains, m, &supports.inverse(m)))
}

/// Checks a chain against the Σ¹-connection conditions directly.
pub fn replay_sigma(supports: &SupportSets, chain: &[GroupElem], g: &GroupElem, h: &GroupElem) -> bool {
    let group = &supports.group;
    if chain.is_empty() || chain.len().is_multiple_of(2) || &chain[0] != g {
        return false;
    }
    let alphabet: BTreeSet<GroupElem> = supports.alphabet().into_iter().collect();
    if !chain.iter().all(|c| alphabet.contains(c)) {
        return false;
    }
    let mut acc = chain[0].clone();
    let mut odd_products = Vec::new();
    for (i, c) in chain.iter().enumerate().skip(1) {
        acc = group.op(&acc, c);
        // partial products of odd length 3, 5, ...
        if i % 2 == 0 {
            odd_products.push(acc.clone());
        }
    }
    let total = acc;
    let proper = odd_products.len().saturating_sub(1);
    odd_products[..proper].iter().all(|p| supports.sigma.contains(p)) && (&total == h || total == supports.inverse(h))
}

/// Checks a chain against the Λ¹-connection conditions directly.
pub fn replay_lambda(supports: &SupportSets, chain: &[GroupElem], l: &GroupElem, m: &GroupElem) -> bool {
    let group = &supports.group;
    if chain.is_empty() || &chain[0] != l {
        return false;
    }
    let alphabet: BTreeSet<GroupElem> = supports.alphabet().into_iter().collect();
    if !chain.iter().all(|c| alphabet.contains(c)) {
        return false;
    }
    let mut acc = chain[0].clone();
    for c in &chain[1..] {
        if !supports.lambda.contains(&acc) {
            return false;
        }
        acc = group.op(&acc, c);
    }
    &acc == m || acc == supports.inverse(m)
}

/// An equivalence class with a witness chain from the representative to
/// each member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionClass {
    pub kind: ClassKind,
    pub representative: GroupElem,
    pub members: BTreeSet<GroupElem>,
    pub witnesses: BTreeMap<GroupElem, Vec<GroupElem>>,
}

impl ConnectionClass {
    pub fn contains(&self, g: &GroupElem) -> bool {
        self.members.contains(g)
    }
}

fn classes(
    supports: &SupportSets,
    kind: ClassKind,
    base: &BTreeSet<GroupElem>,
    allowed: &BTreeSet<GroupElem>,
    steps: usize,
) -> Vec<ConnectionClass> {
    let mut assigned: BTreeSet<GroupElem> = BTreeSet::new();
    let mut out = Vec::new();
    for rep in base {
        if assigned.contains(rep) {
            continue;
        }
        let chains = search(supports, rep, allowed, steps);
        let mut members = BTreeSet::new();
        let mut witnesses = BTreeMap::new();
        for h in base {
            if let Some(c) = pick_chain(&chains, h, &supports.inverse(h)) {
                members.insert(h.clone());
                witnesses.insert(h.clone(), c);
            }
        }
        assigned.extend(members.iter().cloned());
        out.push(ConnectionClass {
            kind,
            representative: rep.clone(),
            members,
            witnesses,
        });
    }
    out
}

/// Σ¹ split into connection classes, representatives in sorted order.
pub fn sigma_classes(supports: &SupportSets) -> Vec<ConnectionClass> {
    classes(supports, ClassKind::Sigma, &supports.sigma1, &supports.sigma, 2)
}

/// Λ¹ split into connection classes, representatives in sorted order.
pub fn lambda_classes(supports: &SupportSets) -> Vec<ConnectionClass> {
    classes(supports, ClassKind::Lambda, &supports.lambda1, &supports.lambda, 1)
}

/// Problems with a computed partition, empty when it is sound.
pub fn audit_classes(supports: &SupportSets, classes: &[ConnectionClass]) -> Vec<String> {
    let mut problems = Vec::new();
    let Some(kind) = classes.first().map(|c| c.kind) else {
        return problems;
    };
    let base = match kind {
        ClassKind::Sigma => &supports.sigma1,
        ClassKind::Lambda => &supports.lambda1,
    };
    let mut seen: BTreeSet<GroupElem> = BTreeSet::new();
    for c in classes {
        if !c.members.contains(&c.representative) {
            problems.push(format!("class of {} misses its representative", c.representative));
        }
        for m in &c.members {
            if !seen.insert(m.clone()) {
                problems.push(format!("{m} lies in two classes"));
            }
            let inv = supports.inverse(m);
            if base.contains(&inv) && !c.members.contains(&inv) {
                problems.push(format!("class of {} holds {m} but not its inverse", c.representative));
            }
            let ok = match c.witnesses.get(m) {
                Some(chain) => match kind {
                    ClassKind::Sigma => replay_sigma(supports, chain, &c.representative, m),
                    ClassKind::Lambda => replay_lambda(supports, chain, &c.representative, m),
                },
                None => false,
            };
            if !ok {
                problems.push(format!("witness for {m} does not replay"));
            }
        }
    }
    if &seen != base {
        problems.push("classes do not cover the support".to_string());
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grp(m: &[u64]) -> GroupSpec {
        GroupSpec::new(m.to_vec()).unwrap()
    }

    fn el(g: &GroupSpec, c: &[i64]) -> GroupElem {
        g.elem(c).unwrap()
    }

    #[test]
    fn a4_supports_and_classes() {
        let g = grp(&[2, 2]);
        let s = SupportSets::from_sets(g.clone(), [el(&g, &[1, 0]), el(&g, &[0, 1]), el(&g, &[1, 1])], []).unwrap();
        let (p, q) = (el(&g, &[1, 0]), el(&g, &[0, 1]));
        let chain = sigma_connected(&s, &p, &q).unwrap().unwrap();
        assert!(replay_sigma(&s, &chain, &p, &q));
        assert_eq!(chain.len(), 3);
        assert_eq!(sigma_connected(&s, &p, &p).unwrap(), Some(vec![p.clone()]));
        let cls = sigma_classes(&s);
        assert_eq!(cls.len(), 1);
        assert_eq!(cls[0].members.len(), 3);
        assert!(audit_classes(&s, &cls).is_empty());
        assert!(lambda_classes(&s).is_empty());
        assert!(sigma_connected(&s, &g.identity(), &p).is_err());
    }

    #[test]
    fn every_pair_in_sigma_is_connected() {
        // g -> g g^-1 h = h is always a legal single step
        let g = grp(&[0, 0]);
        let s = SupportSets::from_sets(g.clone(), [el(&g, &[1, 0]), el(&g, &[0, 5])], []).unwrap();
        let chain = sigma_connected(&s, &el(&g, &[1, 0]), &el(&g, &[0, 5]))
            .unwrap()
            .unwrap();
        assert_eq!(chain.len(), 3);
        assert_eq!(sigma_classes(&s).len(), 1);
    }

    #[test]
    fn truncated_powers_lambda() {
        // A = F[t]/(t^3) with deg t = λ: lambda1 = {λ, λ^2}
        let g = grp(&[0]);
        let (l, l2) = (el(&g, &[1]), el(&g, &[2]));
        let s = SupportSets::from_sets(g.clone(), [], [l.clone(), l2.clone()]).unwrap();
        let chain = lambda_connected(&s, &l, &l2).unwrap().unwrap();
        assert_eq!(chain, vec![l.clone(), l.clone()]);
        assert_eq!(lambda_connected(&s, &l, &l).unwrap(), Some(vec![l.clone()]));
        assert_eq!(lambda_classes(&s).len(), 1);
    }

    #[test]
    fn lambda_can_split() {
        // Λ = {±(1,0), ±(0,1)}, alphabet has no element moving one to the other
        let g = grp(&[0, 0]);
        let s = SupportSets::from_sets(g.clone(), [], [el(&g, &[1, 0]), el(&g, &[0, 1])]).unwrap();
        assert_eq!(lambda_connected(&s, &el(&g, &[1, 0]), &el(&g, &[0, 1])).unwrap(), None);
        let cls = lambda_classes(&s);
        assert_eq!(cls.len(), 2);
        assert!(audit_classes(&s, &cls).is_empty());
    }

    #[test]
    fn replay_rejects_bad_chains() {
        let g = grp(&[0]);
        let (a, b) = (el(&g, &[1]), el(&g, &[3]));
        let s = SupportSets::from_sets(g.clone(), [a.clone(), b.clone()], []).unwrap();
        assert!(replay_sigma(&s, &[a.clone(), s.inverse(&a), b.clone()], &a, &b));
        assert!(!replay_sigma(&s, &[a.clone(), a.clone()], &a, &b));
        assert!(!replay_sigma(&s, &[a.clone(), a.clone(), g.identity()], &a, &b));
        // letters outside the alphabet are rejected
        assert!(!replay_sigma(&s, &[a.clone(), el(&g, &[2]), g.identity()], &a, &b));
    }

    #[test]
    fn bad_inputs() {
        let g = grp(&[2]);
        assert_eq!(
            SupportSets::from_sets(g.clone(), [g.identity()], []),
            Err(ConnectionError::Identity)
        );
        let foreign = grp(&[3, 3]).elem(&[1, 2]).unwrap();
        assert_eq!(
            SupportSets::from_sets(g, [], [foreign.clone()]),
            Err(ConnectionError::Foreign(foreign))
        );
    }

    // Oracle: decides connectivity by enumerating all chains up to a length
    // bound, independent of the breadth-first search.
    fn brute_sigma(s: &SupportSets, g: &GroupElem, h: &GroupElem, max_pairs: usize) -> bool {
        let grp = s.group();
        let alphabet = s.alphabet();
        let hit = |x: &GroupElem| x == h || *x == s.inverse(h);
        if hit(g) {
            return true;
        }
        let mut frontier = vec![g.clone()];
        for _ in 0..max_pairs {
            let mut next = Vec::new();
            for x in &frontier {
                for u in &alphabet {
                    for v in &alphabet {
                        let y = grp.op3(x, u, v);
                        if hit(&y) {
                            return true;
                        }
                        if s.sigma.contains(&y) {
                            next.push(y);
                        }
                    }
                }
            }
            next.sort();
            next.dedup();
            frontier = next;
        }
        false
    }

    fn brute_lambda(s: &SupportSets, l: &GroupElem, m: &GroupElem, max_steps: usize) -> bool {
        let grp = s.group();
        let alphabet = s.alphabet();
        let hit = |x: &GroupElem| x == m || *x == s.inverse(m);
        if hit(l) {
            return true;
        }
        let mut frontier = vec![l.clone()];
        for _ in 0..max_steps {
            let mut next = Vec::new();
            for x in &frontier {
                for u in &alphabet {
                    let y = grp.op(x, u);
                    if hit(&y) {
                        return true;
                    }
                    if s.lambda.contains(&y) {
                        next.push(y);
                    }
                }
            }
            next.sort();
            next.dedup();
            frontier = next;
        }
        false
    }

    fn synthetic() -> impl Strategy<Value = SupportSets> {
        prop_oneof![
            Just(vec![2u64, 2, 2, 2]),
            Just(vec![4, 4]),
            Just(vec![16]),
            Just(vec![3, 5]),
            Just(vec![2, 8]),
            Just(vec![2, 2, 3]),
        ]
        .prop_flat_map(|moduli| {
            let g = GroupSpec::new(moduli).unwrap();
            let all = g.elements().unwrap();
            let n = all.len();
            (
                Just(g),
                Just(all),
                prop::collection::btree_set(1..n, 0..6),
                prop::collection::btree_set(1..n, 0..6),
            )
        })
        .prop_map(|(g, all, s, l)| {
            SupportSets::from_sets(
                g,
                s.into_iter().map(|i| all[i].clone()),
                l.into_iter().map(|i| all[i].clone()),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn search_agrees_with_enumeration(s in synthetic()) {
            for g in &s.sigma1 {
                for h in &s.sigma1 {
                    let found = sigma_connected(&s, g, h).unwrap();
                    prop_assert_eq!(found.is_some(), brute_sigma(&s, g, h, s.sigma.len() + 1));
                    if let Some(c) = found {
                        prop_assert!(replay_sigma(&s, &c, g, h));
                    }
                }
            }
            for l in &s.lambda1 {
                for m in &s.lambda1 {
                    let found = lambda_connected(&s, l, m).unwrap();
                    prop_assert_eq!(found.is_some(), brute_lambda(&s, l, m, s.lambda.len() + 1));
                    if let Some(c) = found {
                        prop_assert!(replay_lambda(&s, &c, l, m));
                    }
                }
            }
            prop_assert!(audit_classes(&s, &sigma_classes(&s)).is_empty());
            prop_assert!(audit_classes(&s, &lambda_classes(&s)).is_empty());
        }
    }
}
