//! Preacycloids: tope families on a ground set with involution.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ground::{GroundSet, RootSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preacycloid {
    ground: Arc<GroundSet>,
    topes: Vec<RootSet>,
    loops: RootSet,
}

/// Outcome of the wall-crossing check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcycloidCheck {
    Acycloid,
    NoTopes,
    /// No class of `from \ to` can be flipped inside the family.
    NoCrossing { from: RootSet, to: RootSet },
}

impl AcycloidCheck {
    pub fn holds(self) -> bool {
        self == AcycloidCheck::Acycloid
    }
}

#[derive(Clone, Debug)]
pub struct Simplification {
    pub preacycloid: Preacycloid,
    /// `classes[j]` is the parallelism class represented by element `j`.
    pub classes: Vec<RootSet>,
}

#[derive(Clone, Debug)]
pub struct HandaWitness {
    /// Classes contracted, in order, to reach the failing node.
    pub path: Vec<RootSet>,
    pub failure: AcycloidCheck,
    pub node: Preacycloid,
}

#[derive(Clone, Debug)]
pub struct HandaReport {
    pub is_matroidal: bool,
    pub witness: Option<HandaWitness>,
    pub node_count: usize,
}

#[derive(Serialize)]
struct HandaJson {
    is_matroidal: bool,
    node_count: usize,
    witness_path: Option<Vec<Vec<String>>>,
    failure: Option<String>,
}

impl HandaReport {
    pub fn to_json(&self, ground: &GroundSet) -> serde_json::Value {
        let j = HandaJson {
            is_matroidal: self.is_matroidal,
            node_count: self.node_count,
            witness_path: self
                .witness
                .as_ref()
                .map(|w| w.path.iter().map(|c| ground.names(*c)).collect()),
            failure: self.witness.as_ref().map(|w| match w.failure {
                AcycloidCheck::NoTopes => "no topes".to_string(),
                AcycloidCheck::NoCrossing { from, to } => {
                    format!("no crossing from {} to {}", ground.format(from), ground.format(to))
                }
                AcycloidCheck::Acycloid => unreachable!(),
            }),
        };
        serde_json::to_value(j).expect("serializable")
    }
}

impl Preacycloid {
    /// Validates the preacycloid axioms and builds the family.
    pub fn new(ground: Arc<GroundSet>, mut topes: Vec<RootSet>) -> Result<Preacycloid> {
        let n = ground.pairs();
        for t in &topes {
            if t.pairs() != n {
                return Err(Error::GroundMismatch);
            }
        }
        topes.sort();
        topes.dedup();
        let union = topes.iter().fold(ground.empty(), |a, &t| a | t);
        let loops = !union;
        for &t in &topes {
            if topes.binary_search(&t.involute()).is_err() {
                return Err(Error::AxiomViolation { axiom: "A3", witness: ground.format(t) });
            }
        }
        for &t in &topes {
            if !t.is_disjoint(t.involute()) || (t | t.involute()) != union {
                return Err(Error::AxiomViolation { axiom: "A2", witness: ground.format(t) });
            }
        }
        Ok(Preacycloid { ground, topes, loops })
    }

    pub fn from_labels<S: AsRef<str>>(ground: Arc<GroundSet>, topes: &[Vec<S>]) -> Result<Preacycloid> {
        let sets = topes.iter().map(|t| ground.parse_set(t)).collect::<Result<Vec<_>>>()?;
        Preacycloid::new(ground, sets)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn pairs(&self) -> usize {
        self.ground.pairs()
    }

    pub fn topes(&self) -> &[RootSet] {
        &self.topes
    }

    pub fn loops(&self) -> RootSet {
        self.loops
    }

    /// Loops with a positive index, the default choice of positive loops.
    pub fn default_loops_plus(&self) -> RootSet {
        self.loops & RootSet::positives(u64::MAX, self.pairs())
    }

    pub fn is_topeless(&self) -> bool {
        self.topes.is_empty()
    }

    pub fn is_loopless(&self) -> bool {
        self.loops.is_empty()
    }

    pub fn contains_tope(&self, t: RootSet) -> bool {
        self.topes.binary_search(&t).is_ok()
    }

    pub fn key(&self) -> Vec<u64> {
        self.topes.iter().map(|t| t.bits()).collect()
    }

    /// Partition of the ground set into parallelism classes, sorted by
    /// smallest member. All loops form one class.
    pub fn parallelism_classes(&self) -> Vec<RootSet> {
        let mut classes = vec![self.ground.full()];
        for &t in &self.topes {
            let mut next = Vec::with_capacity(classes.len() * 2);
            for c in classes {
                let a = c & t;
                let b = c - t;
                if !a.is_empty() {
                    next.push(a);
                }
                if !b.is_empty() {
                    next.push(b);
                }
            }
            classes = next;
        }
        classes.sort_by_key(|c| c.first());
        classes
    }

    pub fn nonloop_classes(&self) -> Vec<RootSet> {
        self.parallelism_classes().into_iter().filter(|c| c.is_disjoint(self.loops)).collect()
    }

    pub fn is_simple(&self) -> bool {
        self.is_loopless() && self.parallelism_classes().iter().all(|c| c.len() == 1)
    }

    pub fn class_of(&self, e: usize) -> RootSet {
        self.parallelism_classes().into_iter().find(|c| c.contains(e)).expect("partition")
    }

    /// Elements of `t` whose class can be flipped without leaving the family.
    fn crossable(&self, t: RootSet, classes: &[RootSet]) -> RootSet {
        let mut out = RootSet::empty(t.pairs());
        for &c in classes {
            if c.is_subset(t) && self.contains_tope((t - c) | c.involute()) {
                out = out | c;
            }
        }
        out
    }

    pub fn check_acycloid(&self) -> AcycloidCheck {
        if self.topes.is_empty() {
            return AcycloidCheck::NoTopes;
        }
        let classes = self.nonloop_classes();
        for &h1 in &self.topes {
            let cross = self.crossable(h1, &classes);
            for &h2 in &self.topes {
                if h1 != h2 && cross.is_disjoint(h1 - h2) {
                    return AcycloidCheck::NoCrossing { from: h1, to: h2 };
                }
            }
        }
        AcycloidCheck::Acycloid
    }

    pub fn is_acycloid(&self) -> bool {
        self.check_acycloid().holds()
    }

    /// A shortest gallery from `from` to `to`, flipping one class per step.
    pub fn tope_path(&self, from: RootSet, to: RootSet) -> Result<Vec<RootSet>> {
        for t in [from, to] {
            if !self.contains_tope(t) {
                return Err(Error::TopeNotFound(self.ground.format(t)));
            }
        }
        if !self.is_acycloid() {
            return Err(Error::NotAcycloid("tope path requires an acycloid".into()));
        }
        let classes = self.nonloop_classes();
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            let cross = self.crossable(cur, &classes) & (cur - to);
            let e = cross.first().ok_or_else(|| Error::NotAcycloid(self.ground.format(cur)))?;
            let c = classes.iter().find(|c| c.contains(e)).copied().expect("class");
            cur = (cur - c) | c.involute();
            path.push(cur);
        }
        Ok(path)
    }

    /// Loops removed and parallel classes merged.
    pub fn simplify(&self) -> Simplification {
        let nonloop = self.nonloop_classes();
        let mut positive: Vec<RootSet> = Vec::new();
        for &c in &nonloop {
            if !positive.contains(&c.involute()) {
                positive.push(c);
            }
        }
        let m = positive.len();
        let labels = positive
            .iter()
            .map(|c| self.ground.names(*c).join("|"))
            .collect::<Vec<_>>();
        let ground = Arc::new(GroundSet::new(labels).expect("labels derived from a valid ground set"));
        let mut classes = positive.clone();
        classes.extend(positive.iter().map(|c| c.involute()));
        let topes = self
            .topes
            .iter()
            .map(|&t| {
                let mut s = RootSet::empty(m);
                for (j, c) in classes.iter().enumerate() {
                    if c.is_subset(t) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        let preacycloid = Preacycloid::new(ground, topes).expect("simplification preserves the axioms");
        Simplification { preacycloid, classes }
    }

    /// Topes `H \ g` for `g ⊆ H` with `(H \ g) ∪ g*` also a tope. The ground
    /// set is kept.
    pub fn quasicontract(&self, gamma: RootSet) -> Preacycloid {
        let star = gamma.involute();
        let topes = self
            .topes
            .iter()
            .filter(|&&h| gamma.is_subset(h) && self.contains_tope((h - gamma) | star))
            .map(|&h| h - gamma)
            .collect();
        Preacycloid::new(self.ground.clone(), topes).expect("quasicontraction preserves the axioms")
    }

    /// Contraction by a single element, dropping its pair from the ground set.
    pub fn elementary_contract(&self, e: usize) -> Result<Preacycloid> {
        let n = self.pairs();
        if e >= 2 * n {
            return Err(Error::UnknownLabel(format!("index {e}")));
        }
        let base = if self.loops.contains(e) { self.clone() } else { self.quasicontract(self.class_of(e)) };
        let keep: Vec<usize> = (0..n).filter(|&i| i != e % n).collect();
        let ground = Arc::new(self.ground.restrict_pairs(&keep)?);
        let topes = base.topes.iter().map(|t| t.restrict_pairs(&keep)).collect();
        Preacycloid::new(ground, topes)
    }

    /// Explores every iterated quasicontraction at classes of non-loops and
    /// checks that each one is an acycloid.
    pub fn handa_test(&self) -> HandaReport {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut queue: VecDeque<(Preacycloid, Vec<RootSet>)> = VecDeque::new();
        seen.insert(self.key());
        queue.push_back((self.clone(), Vec::new()));
        while let Some((node, path)) = queue.pop_front() {
            let check = node.check_acycloid();
            if !check.holds() {
                return HandaReport {
                    is_matroidal: false,
                    witness: Some(HandaWitness { path, failure: check, node }),
                    node_count: seen.len(),
                };
            }
            for c in node.nonloop_classes() {
                let child = node.quasicontract(c);
                if seen.insert(child.key()) {
                    let mut p = path.clone();
                    p.push(c);
                    queue.push_back((child, p));
                }
            }
        }
        HandaReport { is_matroidal: true, witness: None, node_count: seen.len() }
    }

    /// Applies an element map that commutes with the involution.
    pub fn relabel(&self, ground: Arc<GroundSet>, map: &[usize]) -> Result<Preacycloid> {
        let topes = self.topes.iter().map(|&t| map_set(t, map, ground.pairs())).collect();
        Preacycloid::new(ground, topes)
    }

    /// Orbit-minimal tope list under signed permutations of the pairs.
    pub fn canonical_key(&self) -> Vec<u64> {
        let n = self.pairs();
        let mut best: Option<Vec<u64>> = None;
        for perm in permutations(n) {
            for signs in 0u64..1 << n {
                let map = signed_map(&perm, signs);
                let mut k: Vec<u64> = self.topes.iter().map(|&t| map_set(t, &map, n).bits()).collect();
                k.sort_unstable();
                if best.as_ref().is_none_or(|b| k < *b) {
                    best = Some(k);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// An involution-preserving element map carrying this family onto `other`.
    pub fn find_isomorphism(&self, other: &Preacycloid) -> Option<Vec<usize>> {
        if other.pairs() != self.pairs() {
            return None;
        }
        find_family_isomorphism(self.pairs(), &self.topes, &other.topes)
    }
}

/// An involution-preserving element map sending the family `left` onto the
/// family `right`, both on `n` pairs, found by backtracking over pairs.
pub fn find_family_isomorphism(n: usize, left: &[RootSet], right: &[RootSet]) -> Option<Vec<usize>> {
    let mut l = left.to_vec();
    let mut r = right.to_vec();
    l.sort();
    l.dedup();
    r.sort();
    r.dedup();
    if l.len() != r.len() {
        return None;
    }
    let mut image = vec![usize::MAX; 2 * n];
    let mut used = vec![false; n];
    if extend_iso(n, &l, &r, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn extend_iso(n: usize, left: &[RootSet], right: &[RootSet], k: usize, image: &mut [usize], used: &mut [bool]) -> bool {
    if k == n {
        return true;
    }
    for target in 0..n {
        if used[target] {
            continue;
        }
        for flip in [false, true] {
            let (p, q) = if flip { (target + n, target) } else { (target, target + n) };
            image[k] = p;
            image[k + n] = q;
            used[target] = true;
            if partial_match(n, left, right, k + 1, image) && extend_iso(n, left, right, k + 1, image, used) {
                return true;
            }
            used[target] = false;
        }
    }
    image[k] = usize::MAX;
    image[k + n] = usize::MAX;
    false
}

/// Compares the multisets of projections onto the pairs assigned so far.
fn partial_match(n: usize, left: &[RootSet], right: &[RootSet], assigned: usize, image: &[usize]) -> bool {
    let mut dom = RootSet::empty(n);
    for i in 0..assigned {
        dom.insert(image[i]);
        dom.insert(image[i + n]);
    }
    let mut lp: Vec<u64> = left
        .iter()
        .map(|&t| {
            let mut s = RootSet::empty(n);
            for i in 0..assigned {
                for j in [i, i + n] {
                    if t.contains(j) {
                        s.insert(image[j]);
                    }
                }
            }
            s.bits()
        })
        .collect();
    let mut rp: Vec<u64> = right.iter().map(|&t| (t & dom).bits()).collect();
    lp.sort_unstable();
    rp.sort_unstable();
    lp == rp
}

pub fn map_set(s: RootSet, map: &[usize], pairs: usize) -> RootSet {
    let mut out = RootSet::empty(pairs);
    for i in s.iter() {
        out.insert(map[i]);
    }
    out
}

fn signed_map(perm: &[usize], signs: u64) -> Vec<usize> {
    let n = perm.len();
    let mut map = vec![0; 2 * n];
    for (i, &p) in perm.iter().enumerate() {
        let flip = signs >> i & 1 == 1;
        map[i] = if flip { p + n } else { p };
        map[i + n] = if flip { p } else { p + n };
    }
    map
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Preacycloid {
        let g = Arc::new(GroundSet::standard(3).unwrap());
        let t = [
            vec!["e1", "e2", "e3"],
            vec!["e1", "-e2", "e3"],
            vec!["e1", "-e2", "-e3"],
            vec!["-e1", "-e2", "-e3"],
            vec!["-e1", "e2", "-e3"],
            vec!["-e1", "e2", "e3"],
        ];
        Preacycloid::from_labels(g, &t).unwrap()
    }

    #[test]
    fn rejects_missing_opposite() {
        let g = Arc::new(GroundSet::standard(2).unwrap());
        let err = Preacycloid::from_labels(g, &[vec!["e1", "e2"]]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom: "A3", .. }));
    }

    #[test]
    fn hexagon_is_acycloid() {
        let a = a2();
        assert!(a.is_acycloid());
        assert!(a.is_simple());
        let g = a.ground().clone();
        let p = a
            .tope_path(g.parse_list("e1,e2,e3").unwrap(), g.parse_list("-e1,-e2,-e3").unwrap())
            .unwrap();
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
    }
}
