//! Signed groupoid sets: finite groupoids acting on involuted root sets,
//! with a positive half set at every object.
//!
//! A morphism `g: b -> a` is stored with its action, the permutation sending
//! roots at `b` to roots at `a`. Morphisms with the same ends and the same
//! action are identified, so composition is looked up by action.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::feasibility::{dot, Q};
use crate::ground::{GroundSet, RootSet};
use crate::preacycloid::{find_family_isomorphism, Preacycloid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub usize);

/// Default bound on the size of generated groups.
pub const GROUP_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct Object {
    pub name: String,
    pub ground: Arc<GroundSet>,
    pub positive: RootSet,
}

/// Input description of a morphism `source -> target`.
#[derive(Clone, Debug)]
pub struct MorphismSpec {
    pub source: ObjId,
    pub target: ObjId,
    pub action: Vec<u8>,
    pub label: Option<String>,
}

#[derive(Clone, Debug)]
struct Morphism {
    source: usize,
    target: usize,
    action: Vec<u8>,
    inversion: RootSet,
    inverse: usize,
    identity: bool,
    label: String,
}

#[derive(Clone, Debug)]
pub struct Sgs {
    objects: Vec<Object>,
    morphisms: Vec<Morphism>,
    /// `hom[a][b]` lists the morphisms `b -> a`.
    hom: Vec<Vec<Vec<usize>>>,
    into: Vec<Vec<usize>>,
    identities: Vec<usize>,
    lookup: HashMap<(usize, usize, Vec<u8>), usize>,
    by_inversion: Vec<HashMap<u64, usize>>,
}

fn identity_action(size: usize) -> Vec<u8> {
    (0..size as u8).collect()
}

fn invert_action(action: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; action.len()];
    for (i, &j) in action.iter().enumerate() {
        inv[j as usize] = i as u8;
    }
    inv
}

fn map_through(action: &[u8], s: RootSet, pairs: usize) -> RootSet {
    let mut out = RootSet::empty(pairs);
    for i in s.iter() {
        out.insert(action[i] as usize);
    }
    out
}

fn check_action(src: &GroundSet, dst: &GroundSet, action: &[u8]) -> Result<()> {
    if src.size() != dst.size() || action.len() != src.size() {
        return Err(Error::DimensionMismatch(format!(
            "action of length {} between root sets of sizes {} and {}",
            action.len(),
            src.size(),
            dst.size()
        )));
    }
    let mut seen = vec![false; action.len()];
    for (i, &j) in action.iter().enumerate() {
        let j = j as usize;
        if j >= seen.len() || seen[j] {
            return Err(Error::Inconsistent(format!("action {action:?} is not a bijection")));
        }
        seen[j] = true;
        if action[src.involute(i)] as usize != dst.involute(j) {
            return Err(Error::Inconsistent(format!("action {action:?} does not commute with negation")));
        }
    }
    Ok(())
}

/// Evidence attached to a failed property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Object(ObjId),
    Objects(ObjId, ObjId),
    Morphism(MorId),
    Pair(MorId, MorId),
    Triple(MorId, MorId, MorId),
    Root(ObjId, usize),
    Roots(ObjId, usize, usize),
    Note(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Flag {
    fn yes() -> Flag {
        Flag { holds: true, witness: None }
    }

    fn no(w: Witness) -> Flag {
        Flag { holds: false, witness: Some(w) }
    }

    fn from(w: Option<Witness>) -> Flag {
        match w {
            None => Flag::yes(),
            Some(w) => Flag::no(w),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub faithful: Flag,
    pub finite: Flag,
    pub connected: Flag,
    pub simply_connected: Flag,
    pub real: Flag,
    pub compressed: Flag,
    pub antipodal: Flag,
    pub complete: Flag,
    pub rootoidal_jop: Flag,
    pub atomically_generated: Flag,
    pub preprincipal: Flag,
    pub principal: Flag,
    pub hereditarily_preprincipal: Option<Flag>,
}

impl PropertyReport {
    pub fn entries(&self) -> Vec<(&'static str, &Flag)> {
        let mut v = vec![
            ("faithful", &self.faithful),
            ("finite", &self.finite),
            ("connected", &self.connected),
            ("simply_connected", &self.simply_connected),
            ("real", &self.real),
            ("compressed", &self.compressed),
            ("antipodal", &self.antipodal),
            ("complete", &self.complete),
            ("rootoidal_jop", &self.rootoidal_jop),
            ("atomically_generated", &self.atomically_generated),
            ("preprincipal", &self.preprincipal),
            ("principal", &self.principal),
        ];
        if let Some(h) = &self.hereditarily_preprincipal {
            v.push(("hereditarily_preprincipal", h));
        }
        v
    }

    pub fn get(&self, name: &str) -> Option<&Flag> {
        self.entries().into_iter().find(|(k, _)| *k == name).map(|(_, f)| f)
    }

    pub fn holds(&self, name: &str) -> bool {
        self.get(name).is_some_and(|f| f.holds)
    }

    /// Names of the listed properties that fail.
    pub fn failing(&self, names: &[&str]) -> Vec<String> {
        names.iter().filter(|n| !self.holds(n)).map(|n| n.to_string()).collect()
    }

    pub fn to_json(&self, r: &Sgs) -> Value {
        let mut flags = serde_json::Map::new();
        let mut witnesses = serde_json::Map::new();
        for (k, f) in self.entries() {
            flags.insert(k.to_string(), Value::Bool(f.holds));
            if let Some(w) = &f.witness {
                witnesses.insert(k.to_string(), r.witness_json(w));
            }
        }
        json!({ "flags": flags, "witnesses": witnesses })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PropertyOptions {
    /// Also decide whether every quasicontraction is preprincipal.
    pub hereditary: bool,
}

/// A finite weak order: the morphisms into one object, ordered by
/// containment of inversion sets.
#[derive(Clone, Debug)]
pub struct WeakOrder {
    pub object: ObjId,
    pub elements: Vec<MorId>,
    pub sets: Vec<RootSet>,
}

impl WeakOrder {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.sets[i].is_subset(self.sets[j])
    }

    pub fn position(&self, m: MorId) -> Option<usize> {
        self.elements.iter().position(|&e| e == m)
    }

    pub fn upper_bounds(&self, of: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&u| of.iter().all(|&i| self.leq(i, u))).collect()
    }

    pub fn lower_bounds(&self, of: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&u| of.iter().all(|&i| self.leq(u, i))).collect()
    }

    fn least(&self, cands: &[usize]) -> Option<usize> {
        cands.iter().copied().find(|&c| cands.iter().all(|&d| self.leq(c, d)))
    }

    fn greatest(&self, cands: &[usize]) -> Option<usize> {
        cands.iter().copied().find(|&c| cands.iter().all(|&d| self.leq(d, c)))
    }

    pub fn join(&self, of: &[usize]) -> Option<usize> {
        self.least(&self.upper_bounds(of))
    }

    pub fn meet(&self, of: &[usize]) -> Option<usize> {
        self.greatest(&self.lower_bounds(of))
    }

    pub fn minimal_upper_bounds(&self, of: &[usize]) -> Vec<usize> {
        let ub = self.upper_bounds(of);
        ub.iter().copied().filter(|&u| !ub.iter().any(|&v| v != u && self.leq(v, u))).collect()
    }

    pub fn maximum(&self) -> Option<usize> {
        self.greatest(&(0..self.len()).collect::<Vec<_>>())
    }

    pub fn minimum(&self) -> Option<usize> {
        self.least(&(0..self.len()).collect::<Vec<_>>())
    }

    /// Minimal elements above the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                !self.sets[i].is_empty()
                    && (0..self.len()).all(|j| j == i || self.sets[j].is_empty() || !self.leq(j, i))
            })
            .collect()
    }

    /// First pair without a join, if any. Together with the bottom element
    /// this decides the lattice property of a finite poset.
    pub fn pair_without_join(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.join(&[i, j]).is_none() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn pair_without_meet(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.meet(&[i, j]).is_none() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_lattice(&self) -> bool {
        self.minimum().is_some() && self.maximum().is_some() && self.pair_without_join().is_none()
    }

    /// Number of elements at each inversion set size.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let top = self.sets.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut v = vec![0; top + 1];
        for s in &self.sets {
            v[s.len()] += 1;
        }
        v
    }
}

/// Sign profiles of the roots at one object under all morphisms into it.
#[derive(Clone, Debug)]
pub struct Dominance {
    pub object: ObjId,
    profiles: Vec<Vec<u64>>,
}

impl Dominance {
    /// `alpha ⪯ beta`: every morphism making `beta` negative makes `alpha`
    /// negative too.
    pub fn dominated(&self, alpha: usize, beta: usize) -> bool {
        self.profiles[beta].iter().zip(&self.profiles[alpha]).all(|(b, a)| b & !a == 0)
    }

    pub fn parallel(&self, alpha: usize, beta: usize) -> bool {
        self.profiles[alpha] == self.profiles[beta]
    }

    /// The parallelism partition, ordered by least element.
    pub fn classes(&self, pairs: usize) -> Vec<RootSet> {
        let mut out: Vec<RootSet> = Vec::new();
        let mut groups: BTreeMap<&Vec<u64>, usize> = BTreeMap::new();
        for (i, p) in self.profiles.iter().enumerate() {
            match groups.get(p) {
                Some(&k) => out[k].insert(i),
                None => {
                    groups.insert(p, out.len());
                    out.push(RootSet::empty(pairs).with(i));
                }
            }
        }
        out
    }
}

/// Real compression together with the classes behind each new root.
#[derive(Clone, Debug)]
pub struct Compression {
    pub sgs: Sgs,
    /// `classes[a][j]` is the set of original roots at `a` forming root `j`.
    pub classes: Vec<Vec<RootSet>>,
}

/// Result of testing a root map as an embedding into an oriented matroid.
#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub embedding: bool,
    /// An object whose positive system is not cut out by its simple roots.
    pub failing_object: Option<ObjId>,
    /// Closure agreement over all subsets, checked when the map embeds.
    pub closures_agree: Option<bool>,
    pub counterexample: Option<RootSet>,
}

impl Sgs {
    /// Validates and indexes a groupoid. Identities are added where missing;
    /// closure under composition and inverses is required.
    pub fn new(objects: Vec<Object>, specs: Vec<MorphismSpec>) -> Result<Sgs> {
        Self::assemble(objects, specs, true)
    }

    fn assemble(objects: Vec<Object>, specs: Vec<MorphismSpec>, validate: bool) -> Result<Sgs> {
        if objects.is_empty() {
            return Err(Error::Inconsistent("a signed groupoid set needs an object".into()));
        }
        for o in &objects {
            if o.positive.pairs() != o.ground.pairs() || !o.positive.is_half_set() {
                return Err(Error::NotHalfSet(format!("positive system of {}", o.name)));
            }
        }
        let k = objects.len();
        let mut r = Sgs {
            hom: vec![vec![Vec::new(); k]; k],
            into: vec![Vec::new(); k],
            identities: vec![usize::MAX; k],
            lookup: HashMap::new(),
            by_inversion: vec![HashMap::new(); k],
            morphisms: Vec::new(),
            objects,
        };
        let ids = (0..k).map(|a| MorphismSpec {
            source: ObjId(a),
            target: ObjId(a),
            action: identity_action(r.objects[a].ground.size()),
            label: Some(format!("1[{}]", r.objects[a].name)),
        });
        let all: Vec<MorphismSpec> = ids.chain(specs).collect();
        for s in all {
            let (b, a) = (s.source.0, s.target.0);
            if a >= k || b >= k {
                return Err(Error::Inconsistent(format!("morphism between unknown objects {b} -> {a}")));
            }
            if validate {
                check_action(&r.objects[b].ground, &r.objects[a].ground, &s.action)?;
            }
            let key = (a, b, s.action.clone());
            if r.lookup.contains_key(&key) {
                continue;
            }
            let id = r.morphisms.len();
            let identity = a == b && s.action.iter().enumerate().all(|(i, &j)| i == j as usize);
            if identity {
                r.identities[a] = id;
            }
            let pairs = r.objects[a].ground.pairs();
            let neg_src = r.objects[b].positive.involute();
            let inversion = r.objects[a].positive & map_through(&s.action, neg_src, pairs);
            let label = s.label.unwrap_or_else(|| format!("{}->{}", r.objects[b].name, r.objects[a].name));
            r.morphisms.push(Morphism { source: b, target: a, action: s.action, inversion, inverse: usize::MAX, identity, label });
            r.lookup.insert(key, id);
            r.hom[a][b].push(id);
            r.into[a].push(id);
            r.by_inversion[a].entry(inversion.bits()).or_insert(id);
        }
        for id in 0..r.morphisms.len() {
            let m = &r.morphisms[id];
            let key = (m.source, m.target, invert_action(&m.action));
            match r.lookup.get(&key) {
                Some(&inv) => r.morphisms[id].inverse = inv,
                None => return Err(Error::Inconsistent(format!("morphism {} has no inverse", m.label))),
            }
        }
        if validate {
            for f in 0..r.morphisms.len() {
                let b = r.morphisms[f].source;
                for &g in &r.into[b] {
                    r.compose(MorId(f), MorId(g))?;
                }
            }
        }
        Ok(r)
    }

    /// Closes a set of generators under composition and inverses.
    pub fn generate(objects: Vec<Object>, generators: Vec<MorphismSpec>, cap: usize) -> Result<Sgs> {
        for s in &generators {
            let (b, a) = (s.source.0, s.target.0);
            if a >= objects.len() || b >= objects.len() {
                return Err(Error::Inconsistent("generator between unknown objects".into()));
            }
            check_action(&objects[b].ground, &objects[a].ground, &s.action)?;
        }
        let mut gens: Vec<(usize, usize, Vec<u8>, String)> = Vec::new();
        for (i, s) in generators.iter().enumerate() {
            let name = s.label.clone().unwrap_or_else(|| format!("g{}", i + 1));
            gens.push((s.source.0, s.target.0, s.action.clone(), name.clone()));
            gens.push((s.target.0, s.source.0, invert_action(&s.action), format!("{name}'")));
        }
        let mut found: HashMap<(usize, usize, Vec<u8>), String> = HashMap::new();
        let mut order: Vec<(usize, usize, Vec<u8>)> = Vec::new();
        let mut queue: VecDeque<(usize, usize, Vec<u8>)> = VecDeque::new();
        for (a, o) in objects.iter().enumerate() {
            let key = (a, a, identity_action(o.ground.size()));
            found.insert(key.clone(), String::new());
            order.push(key.clone());
            queue.push_back(key);
        }
        while let Some((b, a, act)) = queue.pop_front() {
            let word = found[&(b, a, act.clone())].clone();
            // extend m: b -> a on the right by generators s: c -> b
            for (src, dst, sact, name) in &gens {
                if *dst != b {
                    continue;
                }
                let composite: Vec<u8> = sact.iter().map(|&j| act[j as usize]).collect();
                let key = (*src, a, composite);
                if !found.contains_key(&key) {
                    if found.len() >= cap {
                        return Err(Error::GroupCapExceeded(cap));
                    }
                    let w = if word.is_empty() { name.clone() } else { format!("{word}{name}") };
                    found.insert(key.clone(), w);
                    order.push(key.clone());
                    queue.push_back(key);
                }
            }
        }
        let specs = order
            .into_iter()
            .map(|key| {
                let label = found[&key].clone();
                let (b, a, action) = key;
                MorphismSpec {
                    source: ObjId(b),
                    target: ObjId(a),
                    action,
                    label: if label.is_empty() { None } else { Some(label) },
                }
            })
            .collect();
        Self::assemble(objects, specs, false)
    }

    /// Connected, simply connected groupoid acting trivially on one root set.
    pub fn trivial_action(ground: Arc<GroundSet>, positives: Vec<(String, RootSet)>) -> Result<Sgs> {
        let objects: Vec<Object> = positives
            .into_iter()
            .map(|(name, positive)| Object { name, ground: ground.clone(), positive })
            .collect();
        for (i, o) in objects.iter().enumerate() {
            if objects[..i].iter().any(|p| p.positive == o.positive) {
                return Err(Error::NotFaithful(format!("two objects with positive system {}", ground.format(o.positive))));
            }
        }
        let id = identity_action(ground.size());
        let k = objects.len();
        let mut specs = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    specs.push(MorphismSpec { source: ObjId(b), target: ObjId(a), action: id.clone(), label: None });
                }
            }
        }
        Self::assemble(objects, specs, false)
    }

    /// The signed groupoid set of a preacycloid: one object per tope with
    /// positive system `H ∪ L⁺`.
    pub fn from_preacycloid(a: &Preacycloid, loops_plus: Option<RootSet>) -> Result<Sgs> {
        if a.is_topeless() {
            return Err(Error::EmptyTopeFamily);
        }
        let ground = a.ground().clone();
        let l = a.loops();
        let lp = loops_plus.unwrap_or_else(|| a.default_loops_plus());
        if !lp.is_disjoint(lp.involute()) || (lp | lp.involute()) != l {
            return Err(Error::BadLoopSplit(ground.format(lp)));
        }
        let positives = a.topes().iter().map(|&t| (ground.format(t), t | lp)).collect();
        Self::trivial_action(ground, positives)
    }

    /// One object acted on by a permutation group given by generators.
    pub fn group_action(ground: Arc<GroundSet>, positive: RootSet, generators: Vec<(String, Vec<u8>)>, cap: usize) -> Result<Sgs> {
        let obj = Object { name: "o".into(), ground, positive };
        let specs = generators
            .into_iter()
            .map(|(label, action)| MorphismSpec { source: ObjId(0), target: ObjId(0), action, label: Some(label) })
            .collect();
        Self::generate(vec![obj], specs, cap)
    }

    /// Reflection group of a rational root list closed under negation.
    ///
    /// Reflections are `v - 2 B(a,v)/B(a,a) a` for the bilinear form with
    /// matrix `gram` (the dot product by default). Each pair of roots becomes
    /// one label pair, oriented so the lexicographically positive root is the
    /// positive element; the positive system defaults to those roots.
    pub fn coxeter_fixture(
        roots: &[Vec<Q>],
        gram: Option<&[Vec<Q>]>,
        generators: &[usize],
        positive: Option<RootSet>,
        cap: usize,
    ) -> Result<Sgs> {
        let dim = roots.first().map_or(0, Vec::len);
        if roots.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("roots of different lengths".into()));
        }
        if let Some(g) = gram {
            if g.len() != dim || g.iter().any(|row| row.len() != dim) {
                return Err(Error::DimensionMismatch("gram matrix does not match the roots".into()));
            }
        }
        let form = |x: &[Q], y: &[Q]| -> Q {
            match gram {
                None => dot(x, y),
                Some(g) => {
                    let gy: Vec<Q> = g.iter().map(|row| dot(row, y)).collect();
                    dot(x, &gy)
                }
            }
        };
        let neg = |v: &[Q]| -> Vec<Q> { v.iter().map(|x| -x.clone()).collect() };
        let lex_positive = |v: &[Q]| v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive());
        for (i, r) in roots.iter().enumerate() {
            if r.iter().all(Zero::is_zero) {
                return Err(Error::ZeroVector(i));
            }
            if roots[..i].contains(r) {
                return Err(Error::DuplicateAfterNegation(roots.iter().position(|s| s == r).unwrap_or(0), i));
            }
            if !roots.contains(&neg(r)) {
                return Err(Error::NotNegationClosed(i));
            }
        }
        let positives: Vec<Vec<Q>> = roots.iter().filter(|r| lex_positive(r)).cloned().collect();
        let n = positives.len();
        let element = |i: usize| -> Vec<Q> { if i < n { positives[i].clone() } else { neg(&positives[i - n]) } };
        let index_of = |v: &[Q]| -> Option<usize> { (0..2 * n).find(|&i| element(i) == v) };
        let ground = Arc::new(GroundSet::standard(n)?);
        let mut gens = Vec::new();
        for (k, &g) in generators.iter().enumerate() {
            let alpha = roots.get(g).ok_or_else(|| Error::Parse(format!("generator index {g} out of range")))?;
            let aa = form(alpha, alpha);
            if aa.is_zero() {
                return Err(Error::ReflectionNotClosed(g));
            }
            let mut action = Vec::with_capacity(2 * n);
            for i in 0..2 * n {
                let v = element(i);
                let c = Q::from_integer(2.into()) * form(alpha, &v) / &aa;
                let img: Vec<Q> = v.iter().zip(alpha).map(|(x, a)| x - &c * a).collect();
                action.push(index_of(&img).ok_or(Error::ReflectionNotClosed(g))? as u8);
            }
            gens.push((format!("s{}", k + 1), action));
        }
        let pos = positive.unwrap_or_else(|| RootSet::positives(u64::MAX, n));
        Self::group_action(ground, pos, gens, cap)
    }

    // ---- accessors ----

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn object(&self, a: ObjId) -> &Object {
        &self.objects[a.0]
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn ground(&self, a: ObjId) -> &Arc<GroundSet> {
        &self.objects[a.0].ground
    }

    pub fn positive(&self, a: ObjId) -> RootSet {
        self.objects[a.0].positive
    }

    pub fn negative(&self, a: ObjId) -> RootSet {
        self.objects[a.0].positive.involute()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn source(&self, m: MorId) -> ObjId {
        ObjId(self.morphisms[m.0].source)
    }

    pub fn target(&self, m: MorId) -> ObjId {
        ObjId(self.morphisms[m.0].target)
    }

    pub fn action(&self, m: MorId) -> &[u8] {
        &self.morphisms[m.0].action
    }

    pub fn label(&self, m: MorId) -> &str {
        &self.morphisms[m.0].label
    }

    /// `Φ_g`: positive roots at the codomain sent negative by `g⁻¹`.
    pub fn inversion(&self, m: MorId) -> RootSet {
        self.morphisms[m.0].inversion
    }

    pub fn inverse(&self, m: MorId) -> MorId {
        MorId(self.morphisms[m.0].inverse)
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        MorId(self.identities[a.0])
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.morphisms[m.0].identity
    }

    /// Morphisms `b -> a`.
    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.hom[a.0][b.0].iter().map(|&i| MorId(i)).collect()
    }

    /// Morphisms with codomain `a`.
    pub fn morphisms_into(&self, a: ObjId) -> Vec<MorId> {
        self.into[a.0].iter().map(|&i| MorId(i)).collect()
    }

    /// The morphism into `a` with the given inversion set.
    pub fn with_inversion(&self, a: ObjId, s: RootSet) -> Option<MorId> {
        self.by_inversion[a.0].get(&s.bits()).map(|&i| MorId(i))
    }

    /// Image of a root set at the domain of `m`.
    pub fn apply(&self, m: MorId, s: RootSet) -> RootSet {
        let t = self.target(m);
        map_through(self.action(m), s, self.ground(t).pairs())
    }

    pub fn apply_root(&self, m: MorId, i: usize) -> usize {
        self.action(m)[i] as usize
    }

    /// `f ∘ g` for `g: c -> b` and `f: b -> a`.
    pub fn compose(&self, f: MorId, g: MorId) -> Result<MorId> {
        let (mf, mg) = (&self.morphisms[f.0], &self.morphisms[g.0]);
        if mf.source != mg.target {
            return Err(Error::NotComposable(format!("{} after {}", mf.label, mg.label)));
        }
        let action: Vec<u8> = mg.action.iter().map(|&j| mf.action[j as usize]).collect();
        self.lookup
            .get(&(mf.target, mg.source, action))
            .map(|&i| MorId(i))
            .ok_or_else(|| Error::Inconsistent(format!("composite of {} and {} is missing", mf.label, mg.label)))
    }

    pub fn compose_all(&self, ms: &[MorId]) -> Result<MorId> {
        let mut it = ms.iter().rev();
        let mut acc = *it.next().ok_or_else(|| Error::NotComposable("empty product".into()))?;
        for &m in it {
            acc = self.compose(m, acc)?;
        }
        Ok(acc)
    }

    pub fn describe(&self, m: MorId) -> String {
        let mm = &self.morphisms[m.0];
        let (s, t) = (&self.objects[mm.source].name, &self.objects[mm.target].name);
        if mm.label == format!("{s}->{t}") {
            format!("{s} -> {t}")
        } else {
            format!("{}: {s} -> {t}", mm.label)
        }
    }

    pub fn witness_json(&self, w: &Witness) -> Value {
        let obj = |a: &ObjId| Value::String(self.objects[a.0].name.clone());
        let mor = |m: &MorId| Value::String(self.describe(*m));
        let root = |a: &ObjId, i: &usize| Value::String(self.objects[a.0].ground.label(*i));
        match w {
            Witness::Object(a) => json!({ "object": obj(a) }),
            Witness::Objects(a, b) => json!({ "objects": [obj(a), obj(b)] }),
            Witness::Morphism(m) => json!({ "morphism": mor(m) }),
            Witness::Pair(g, h) => json!({ "morphisms": [mor(g), mor(h)] }),
            Witness::Triple(g, h, k) => json!({ "morphisms": [mor(g), mor(h), mor(k)] }),
            Witness::Root(a, i) => json!({ "object": obj(a), "root": root(a, i) }),
            Witness::Roots(a, i, j) => json!({ "object": obj(a), "roots": [root(a, i), root(a, j)] }),
            Witness::Note(s) => json!({ "note": s }),
        }
    }

    // ---- weak order ----

    /// First pair of distinct morphisms into `a` with equal inversion sets.
    pub fn faithfulness_failure(&self, a: ObjId) -> Option<(MorId, MorId)> {
        let into = &self.into[a.0];
        for (i, &g) in into.iter().enumerate() {
            for &h in &into[..i] {
                if self.morphisms[g].inversion == self.morphisms[h].inversion {
                    return Some((MorId(h), MorId(g)));
                }
            }
        }
        None
    }

    pub fn weak_order(&self, a: ObjId) -> Result<WeakOrder> {
        if let Some((g, h)) = self.faithfulness_failure(a) {
            return Err(Error::NotFaithful(format!("{} and {} share an inversion set", self.describe(g), self.describe(h))));
        }
        let elements = self.morphisms_into(a);
        let sets = elements.iter().map(|&m| self.inversion(m)).collect();
        Ok(WeakOrder { object: a, elements, sets })
    }

    pub fn leq(&self, g: MorId, h: MorId) -> bool {
        self.target(g) == self.target(h) && self.inversion(g).is_subset(self.inversion(h))
    }

    pub fn orthogonal(&self, g: MorId, h: MorId) -> bool {
        self.inversion(g).is_disjoint(self.inversion(h))
    }

    fn order_op(&self, ms: &[MorId], a: ObjId, join: bool) -> Result<Option<MorId>> {
        let wo = self.weak_order(a)?;
        let mut idx = Vec::with_capacity(ms.len());
        for &m in ms {
            idx.push(wo.position(m).ok_or_else(|| Error::NotComposable(format!("{} is not into the object", self.describe(m))))?);
        }
        let r = if join { wo.join(&idx) } else { wo.meet(&idx) };
        Ok(r.map(|i| wo.elements[i]))
    }

    /// Join in weak order at `a`; the empty join is `1_a`.
    pub fn join(&self, a: ObjId, ms: &[MorId]) -> Result<Option<MorId>> {
        self.order_op(ms, a, true)
    }

    pub fn meet(&self, a: ObjId, ms: &[MorId]) -> Result<Option<MorId>> {
        self.order_op(ms, a, false)
    }

    pub fn atoms(&self, a: ObjId) -> Vec<MorId> {
        let into = &self.into[a.0];
        into.iter()
            .copied()
            .filter(|&g| {
                let sg = self.morphisms[g].inversion;
                !self.morphisms[g].identity
                    && into.iter().all(|&h| {
                        h == g || self.morphisms[h].identity || !self.morphisms[h].inversion.is_subset(sg)
                    })
            })
            .map(MorId)
            .collect()
    }

    pub fn simple_morphisms(&self, a: ObjId) -> Vec<MorId> {
        self.morphisms_into(a).into_iter().filter(|&m| self.inversion(m).len() == 1).collect()
    }

    /// Maximum of weak order at `a`.
    pub fn antipode(&self, a: ObjId) -> Result<MorId> {
        let wo = self.weak_order(a)?;
        wo.maximum().map(|i| wo.elements[i]).ok_or_else(|| Error::NotAntipodal(self.objects[a.0].name.clone()))
    }

    /// `g⊥ = g ω_b` for `g: b -> a`.
    pub fn orthocomplement(&self, g: MorId) -> Result<MorId> {
        let w = self.antipode(self.source(g))?;
        self.compose(g, w)
    }

    // ---- roots ----

    /// Positive real roots at `a`: the union of all inversion sets there.
    pub fn real_positive(&self, a: ObjId) -> RootSet {
        self.into[a.0].iter().fold(self.ground(a).empty(), |s, &m| s | self.morphisms[m].inversion)
    }

    pub fn imaginary_positive(&self, a: ObjId) -> RootSet {
        self.positive(a) - self.real_positive(a)
    }

    pub fn real_roots(&self, a: ObjId) -> RootSet {
        let r = self.real_positive(a);
        r | r.involute()
    }

    pub fn imaginary_roots(&self, a: ObjId) -> RootSet {
        let i = self.imaginary_positive(a);
        i | i.involute()
    }

    pub fn dominance(&self, a: ObjId) -> Dominance {
        let into = &self.into[a.0];
        let words = into.len().div_ceil(64).max(1);
        let size = self.ground(a).size();
        let mut profiles = vec![vec![0u64; words]; size];
        for (k, &g) in into.iter().enumerate() {
            let inv = &self.morphisms[self.morphisms[g].inverse];
            let src_pos = self.objects[inv.target].positive;
            for (i, p) in profiles.iter_mut().enumerate() {
                if !src_pos.contains(inv.action[i] as usize) {
                    p[k / 64] |= 1 << (k % 64);
                }
            }
        }
        Dominance { object: a, profiles }
    }

    /// Parallelism classes of real roots at `a`, arranged as a ground set:
    /// class pairs ordered by least member, the class holding that member
    /// first.
    fn real_classes(&self, a: ObjId) -> Vec<RootSet> {
        let pairs = self.ground(a).pairs();
        let real = self.real_roots(a);
        let dom = self.dominance(a);
        let classes: Vec<RootSet> = dom.classes(pairs).into_iter().filter(|c| c.is_subset(real)).collect();
        let mut firsts: Vec<RootSet> = Vec::new();
        for &c in &classes {
            if !firsts.contains(&c.involute()) {
                firsts.push(c);
            }
        }
        let mut out = firsts.clone();
        out.extend(firsts.iter().map(|c| c.involute()));
        out
    }

    /// Quotient of the real roots by parallelism, imaginary roots dropped.
    pub fn real_compression(&self) -> Result<Compression> {
        for a in self.object_ids() {
            if let Some((g, h)) = self.faithfulness_failure(a) {
                return Err(Error::NotFaithful(format!("{} / {}", self.describe(g), self.describe(h))));
            }
        }
        let mut classes = Vec::with_capacity(self.objects.len());
        let mut grounds: Vec<Arc<GroundSet>> = Vec::new();
        let mut objects = Vec::with_capacity(self.objects.len());
        for a in self.object_ids() {
            let cl = self.real_classes(a);
            let g0 = self.ground(a);
            let m = cl.len() / 2;
            let labels: Vec<String> = cl[..m].iter().map(|c| g0.names(*c).join("|")).collect();
            let ground = match grounds.iter().find(|g| g.positive_labels() == labels.as_slice()) {
                Some(g) => g.clone(),
                None => {
                    let g = Arc::new(GroundSet::new(labels)?);
                    grounds.push(g.clone());
                    g
                }
            };
            let mut positive = RootSet::empty(m);
            for (j, c) in cl.iter().enumerate() {
                if c.is_subset(self.positive(a)) {
                    positive.insert(j);
                }
            }
            objects.push(Object { name: self.objects[a.0].name.clone(), ground, positive });
            classes.push(cl);
        }
        let class_index: Vec<Vec<usize>> = classes
            .iter()
            .zip(&self.objects)
            .map(|(cl, o)| {
                let mut idx = vec![usize::MAX; o.ground.size()];
                for (j, c) in cl.iter().enumerate() {
                    for i in c.iter() {
                        idx[i] = j;
                    }
                }
                idx
            })
            .collect();
        let specs = self
            .morphisms
            .iter()
            .filter(|m| !m.identity)
            .map(|m| {
                let action = classes[m.source]
                    .iter()
                    .map(|c| class_index[m.target][m.action[c.first().expect("nonempty class")] as usize] as u8)
                    .collect();
                MorphismSpec { source: ObjId(m.source), target: ObjId(m.target), action, label: Some(m.label.clone()) }
            })
            .collect();
        let sgs = Self::assemble(objects, specs, true)?;
        Ok(Compression { sgs, classes })
    }

    // ---- connectivity and covers ----

    /// Objects reachable from `a`.
    pub fn component_of(&self, a: ObjId) -> Vec<ObjId> {
        let mut seen = vec![false; self.objects.len()];
        let mut queue = VecDeque::from([a.0]);
        seen[a.0] = true;
        while let Some(x) = queue.pop_front() {
            for y in 0..self.objects.len() {
                if !seen[y] && !self.hom[y][x].is_empty() {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.objects.len()).filter(|&y| seen[y]).map(ObjId).collect()
    }

    /// The full subgroupoid on the component of `a`.
    pub fn component(&self, a: ObjId) -> Result<Sgs> {
        let comp = self.component_of(a);
        let mut index = vec![usize::MAX; self.objects.len()];
        for (k, o) in comp.iter().enumerate() {
            index[o.0] = k;
        }
        let objects = comp.iter().map(|o| self.objects[o.0].clone()).collect();
        let specs = self
            .morphisms
            .iter()
            .filter(|m| index[m.target] != usize::MAX && !m.identity)
            .map(|m| MorphismSpec {
                source: ObjId(index[m.source]),
                target: ObjId(index[m.target]),
                action: m.action.clone(),
                label: Some(m.label.clone()),
            })
            .collect();
        Self::assemble(objects, specs, false)
    }

    /// Positive systems of all objects carried to the roots at `base` along
    /// the morphisms into `base`, without duplicates, in first-seen order.
    pub fn transported_positives(&self, base: ObjId) -> Vec<RootSet> {
        let mut out: Vec<RootSet> = Vec::new();
        for &m in &self.into[base.0] {
            let s = self.apply(MorId(m), self.positive(self.source(MorId(m))));
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    /// Universal cover of a connected signed groupoid set, realized with
    /// trivial action on the roots at the first object.
    pub fn universal_cover(&self) -> Result<Sgs> {
        let base = ObjId(0);
        if self.component_of(base).len() != self.objects.len() {
            return Err(Error::PrerequisiteFailed("connected".into()));
        }
        let ground = self.ground(base).clone();
        let sets = self.transported_positives(base);
        let named = sets.into_iter().map(|s| (ground.format(s), s)).collect();
        Self::trivial_action(ground, named)
    }

    /// The preacycloid of positive real parts.
    pub fn pa_of(&self) -> Result<Preacycloid> {
        let report = self.check_properties();
        let missing = report.failing(&["faithful", "finite", "connected", "simply_connected", "antipodal"]);
        if !missing.is_empty() {
            return Err(Error::PrerequisiteFailed(missing.join(", ")));
        }
        let base = ObjId(0);
        let topes = self
            .object_ids()
            .map(|a| {
                let u = self.hom(base, a)[0];
                self.apply(u, self.real_positive(a))
            })
            .collect();
        Preacycloid::new(self.ground(base).clone(), topes)
    }

    /// An isomorphism of connected, simply connected signed groupoid sets,
    /// given as a root map at the first objects. Such a groupoid is
    /// determined by its transported positive systems.
    pub fn simply_connected_isomorphism(&self, other: &Sgs) -> Result<Option<Vec<usize>>> {
        for r in [self, other] {
            let rep = r.check_properties();
            let missing = rep.failing(&["connected", "simply_connected"]);
            if !missing.is_empty() {
                return Err(Error::PrerequisiteFailed(missing.join(", ")));
            }
        }
        let n = self.ground(ObjId(0)).pairs();
        if other.ground(ObjId(0)).pairs() != n || self.object_count() != other.object_count() {
            return Ok(None);
        }
        Ok(find_family_isomorphism(n, &self.transported_positives(ObjId(0)), &other.transported_positives(ObjId(0))))
    }

    /// Exact key for simply connected groupoids: the sorted transported
    /// positive systems at the first object.
    pub fn exact_key(&self) -> Vec<u64> {
        let mut k: Vec<u64> = self.transported_positives(ObjId(0)).iter().map(|s| s.bits()).collect();
        k.sort_unstable();
        k
    }

    // ---- properties ----

    /// Word lengths over `gens` and their inverses; `None` when not generated.
    pub fn lengths(&self, gens: &[MorId]) -> Vec<Option<usize>> {
        let mut all: Vec<usize> = gens.iter().map(|g| g.0).collect();
        all.extend(gens.iter().map(|g| self.morphisms[g.0].inverse));
        all.sort_unstable();
        all.dedup();
        let mut by_target: Vec<Vec<usize>> = vec![Vec::new(); self.objects.len()];
        for &s in &all {
            by_target[self.morphisms[s].target].push(s);
        }
        let mut len = vec![None; self.morphisms.len()];
        let mut queue = VecDeque::new();
        for &i in &self.identities {
            len[i] = Some(0);
            queue.push_back(i);
        }
        while let Some(m) = queue.pop_front() {
            let d = len[m].expect("visited");
            let b = self.morphisms[m].source;
            for &s in &by_target[b] {
                let c = self.compose(MorId(m), MorId(s)).expect("closed groupoid").0;
                if len[c].is_none() {
                    len[c] = Some(d + 1);
                    queue.push_back(c);
                }
            }
        }
        len
    }

    fn all_atoms(&self) -> Vec<MorId> {
        self.object_ids().flat_map(|a| self.atoms(a)).collect()
    }

    fn all_simples(&self) -> Vec<MorId> {
        self.object_ids().flat_map(|a| self.simple_morphisms(a)).collect()
    }

    pub fn check_properties(&self) -> PropertyReport {
        self.check_properties_with(PropertyOptions::default())
    }

    pub fn check_properties_with(&self, opts: PropertyOptions) -> PropertyReport {
        let objs: Vec<ObjId> = self.object_ids().collect();

        let faithful = Flag::from(
            self.morphism_ids().find(|&m| !self.is_identity(m) && self.inversion(m).is_empty()).map(Witness::Morphism),
        );
        let finite = Flag::yes();

        let comp = self.component_of(ObjId(0));
        let connected =
            Flag::from(objs.iter().find(|o| !comp.contains(o)).map(|&o| Witness::Objects(ObjId(0), o)));

        let mut sc = None;
        'sc: for &a in &objs {
            for &b in &objs {
                if self.hom[a.0][b.0].len() > 1 {
                    let h = &self.hom[a.0][b.0];
                    sc = Some(Witness::Pair(MorId(h[0]), MorId(h[1])));
                    break 'sc;
                }
            }
        }
        let simply_connected = Flag::from(sc);

        let real = Flag::from(objs.iter().find_map(|&a| self.imaginary_positive(a).first().map(|i| Witness::Root(a, i))));

        let mut comp_w = None;
        'cw: for &a in &objs {
            let d = self.dominance(a);
            for c in d.classes(self.ground(a).pairs()) {
                if c.len() > 1 {
                    let mut it = c.iter();
                    let x = it.next().expect("class");
                    let y = it.next().expect("class");
                    comp_w = Some(Witness::Roots(a, x, y));
                    break 'cw;
                }
            }
        }
        let compressed = Flag::from(comp_w);

        let orders: Vec<std::result::Result<WeakOrder, (MorId, MorId)>> = objs
            .iter()
            .map(|&a| match self.faithfulness_failure(a) {
                Some(p) => Err(p),
                None => Ok(self.weak_order(a).expect("faithful at a")),
            })
            .collect();
        let unfaithful = || Witness::Note("not faithful".into());

        let mut anti = None;
        for (k, wo) in orders.iter().enumerate() {
            match wo {
                Err(_) => {
                    anti = Some(unfaithful());
                    break;
                }
                Ok(wo) if wo.maximum().is_none() => {
                    anti = Some(Witness::Object(objs[k]));
                    break;
                }
                _ => {}
            }
        }
        let antipodal = Flag::from(anti);

        let mut comp_w = None;
        for wo in &orders {
            match wo {
                Err(_) => {
                    comp_w = Some(unfaithful());
                    break;
                }
                Ok(wo) => {
                    if let Some((i, j)) = wo.pair_without_join() {
                        comp_w = Some(Witness::Pair(wo.elements[i], wo.elements[j]));
                        break;
                    }
                    if wo.maximum().is_none() {
                        comp_w = Some(Witness::Object(wo.object));
                        break;
                    }
                }
            }
        }
        let complete = Flag::from(comp_w);

        let mut jop = None;
        'jop: for wo in &orders {
            let wo = match wo {
                Err(_) => {
                    jop = Some(unfaithful());
                    break;
                }
                Ok(wo) => wo,
            };
            if let Some((i, j)) = wo.pair_without_meet() {
                jop = Some(Witness::Pair(wo.elements[i], wo.elements[j]));
                break;
            }
            for i in 0..wo.len() {
                for j in i + 1..wo.len() {
                    let Some(k) = wo.join(&[i, j]) else { continue };
                    for h in 0..wo.len() {
                        if wo.sets[h].is_disjoint(wo.sets[i])
                            && wo.sets[h].is_disjoint(wo.sets[j])
                            && !wo.sets[h].is_disjoint(wo.sets[k])
                        {
                            jop = Some(Witness::Triple(wo.elements[i], wo.elements[j], wo.elements[h]));
                            break 'jop;
                        }
                    }
                }
            }
        }
        let rootoidal_jop = Flag::from(jop);

        let atoms = self.all_atoms();
        let alen = self.lengths(&atoms);
        let atomically_generated =
            Flag::from(alen.iter().position(Option::is_none).map(|m| Witness::Morphism(MorId(m))));

        let preprincipal = if !faithful.holds {
            Flag::no(unfaithful())
        } else {
            let mut w = None;
            'pp: for &a in &objs {
                for s in self.atoms(a) {
                    let ss = self.inversion(s);
                    for g in self.morphisms_into(a) {
                        let sg = self.inversion(g);
                        if !ss.is_subset(sg) && !ss.is_disjoint(sg) {
                            w = Some(Witness::Pair(g, s));
                            break 'pp;
                        }
                    }
                }
            }
            Flag::from(w)
        };

        let simples = self.all_simples();
        let slen = self.lengths(&simples);
        let principal = Flag::from(self.morphism_ids().find_map(|m| match slen[m.0] {
            Some(l) if l == self.inversion(m).len() => None,
            _ => Some(Witness::Morphism(m)),
        }));

        let hereditarily_preprincipal = if opts.hereditary {
            Some(match crate::brink_howlett::hereditary_preprincipality(self) {
                Ok(None) => Flag::yes(),
                Ok(Some(path)) => Flag::no(Witness::Note(path)),
                Err(e) => Flag::no(Witness::Note(e.to_string())),
            })
        } else {
            None
        };

        PropertyReport {
            faithful,
            finite,
            connected,
            simply_connected,
            real,
            compressed,
            antipodal,
            complete,
            rootoidal_jop,
            atomically_generated,
            preprincipal,
            principal,
            hereditarily_preprincipal,
        }
    }

    /// Properties taken by the standing hypotheses of simple roots and
    /// embeddings.
    fn require_geometry_hypotheses(&self) -> Result<()> {
        let rep = self.check_properties_with(PropertyOptions { hereditary: true });
        let missing = rep.failing(&[
            "finite",
            "connected",
            "simply_connected",
            "real",
            "compressed",
            "hereditarily_preprincipal",
            "antipodal",
        ]);
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::PrerequisiteFailed(missing.join(", ")))
        }
    }

    /// Union of the inversion sets of simple morphisms into `a`, checked
    /// against the extreme elements of the positive system in the matroid of
    /// the associated preacycloid.
    pub fn simple_roots(&self, a: ObjId) -> Result<RootSet> {
        self.require_geometry_hypotheses()?;
        let pi = self.simple_morphisms(a).iter().fold(self.ground(a).empty(), |s, &m| s | self.inversion(m));
        let base = ObjId(0);
        let u = self.hom(base, a)[0];
        let om = crate::oriented_matroid::OrientedMatroid::from_topes(&self.pa_of()?);
        let ex = om.extreme_elements(self.apply(u, self.positive(a)))?.elements;
        if self.apply(u, pi) != ex {
            return Err(Error::Inconsistent(format!(
                "simple roots {} differ from extreme elements {}",
                self.ground(a).format(pi),
                om.ground().format(ex)
            )));
        }
        Ok(pi)
    }

    /// Tests a root map `f` from the roots at the first object into an
    /// oriented matroid as an embedding, and when it is one, checks that
    /// closures correspond on every subset.
    pub fn check_embedding(&self, target: &crate::oriented_matroid::OrientedMatroid, f: &[usize]) -> Result<EmbeddingReport> {
        self.require_geometry_hypotheses()?;
        let base = ObjId(0);
        let g = self.ground(base);
        let tg = target.ground();
        if f.len() != g.size() || f.iter().any(|&x| x >= tg.size()) {
            return Err(Error::PrerequisiteFailed("root map size".into()));
        }
        for i in 0..g.size() {
            if f[g.involute(i)] != tg.involute(f[i]) {
                return Err(Error::PrerequisiteFailed(format!("map does not commute with negation at {}", g.label(i))));
            }
            if f[..i].contains(&f[i]) {
                return Err(Error::PrerequisiteFailed("map is not injective".into()));
            }
        }
        let image = |s: RootSet| -> RootSet {
            let mut out = tg.empty();
            for i in s.iter() {
                out.insert(f[i]);
            }
            out
        };
        let all_image = image(g.full());
        for a in self.object_ids() {
            let u = self.hom(base, a)[0];
            let pi = self.apply(u, self.simple_roots(a)?);
            let pos = self.apply(u, self.positive(a));
            if target.closure(image(pi)) & all_image != image(pos) {
                return Ok(EmbeddingReport { embedding: false, failing_object: Some(a), closures_agree: None, counterexample: None });
            }
        }
        let om = crate::oriented_matroid::OrientedMatroid::from_topes(&self.pa_of()?);
        for x in g.full().subsets() {
            if image(om.closure(x)) != target.closure(image(x)) & all_image {
                return Ok(EmbeddingReport {
                    embedding: true,
                    failing_object: None,
                    closures_agree: Some(false),
                    counterexample: Some(x),
                });
            }
        }
        Ok(EmbeddingReport { embedding: true, failing_object: None, closures_agree: Some(true), counterexample: None })
    }
}

impl fmt::Display for Sgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} objects, {} morphisms", self.objects.len(), self.morphisms.len())?;
        for o in &self.objects {
            writeln!(f, "  {}: positive {}", o.name, o.ground.format(o.positive))?;
        }
        Ok(())
    }
}
