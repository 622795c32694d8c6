//! Oriented matroids presented by their hemispaces, with closure, circuits,
//! rank, extreme elements, minors and an exhaustive axiom checker.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::feasibility::{self, Feasibility, Q};
use crate::ground::{half_sets, GroundSet, RootSet};
use crate::preacycloid::Preacycloid;

/// Ground sets up to this size get a full closure table.
const TABLE_LIMIT: usize = 16;
/// Default cap for exhaustive axiom checks.
pub const EXHAUSTIVE_CAP: usize = 12;

#[derive(Clone, Debug)]
pub struct VectorConfig {
    pub dim: usize,
    pub vectors: Vec<Vec<Q>>,
}

impl VectorConfig {
    /// Vector of element `i`: `v_i` for positive elements, `-v_i` otherwise.
    pub fn element(&self, i: usize) -> Vec<Q> {
        let n = self.vectors.len();
        if i < n {
            self.vectors[i].clone()
        } else {
            self.vectors[i - n].iter().map(|x| -x.clone()).collect()
        }
    }
}

#[derive(Debug)]
pub struct OrientedMatroid {
    ground: Arc<GroundSet>,
    hemispaces: Vec<RootSet>,
    loops: RootSet,
    vectors: Option<VectorConfig>,
    table: OnceLock<Vec<u64>>,
}

impl Clone for OrientedMatroid {
    fn clone(&self) -> Self {
        OrientedMatroid {
            ground: self.ground.clone(),
            hemispaces: self.hemispaces.clone(),
            loops: self.loops,
            vectors: self.vectors.clone(),
            table: self.table.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub members: RootSet,
    pub improper: bool,
}

#[derive(Clone, Debug)]
pub struct Extremes {
    pub elements: RootSet,
    /// Parallel classes used when the matroid had to be simplified first.
    pub classes: Option<Vec<RootSet>>,
}

#[derive(Clone, Debug)]
pub struct SimplicialReport {
    pub simplicial: bool,
    pub rank: usize,
    /// A hemispace with more extreme elements than the rank.
    pub witness: Option<RootSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomMode {
    /// Exhaustive, refusing ground sets above the cap.
    Exhaustive,
    /// Exhaustive regardless of size.
    Forced,
    Sampled { samples: usize, seed: u64 },
    /// Exhaustive up to the cap, sampled beyond it.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub subset: RootSet,
    pub x: Option<usize>,
    pub y: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub exhaustive: bool,
    pub subsets_checked: usize,
    pub failures: Vec<AxiomFailure>,
}

#[derive(Serialize)]
struct FailureJson {
    axiom: &'static str,
    subset: Vec<String>,
    x: Option<String>,
    y: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, axiom: &str) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }

    pub fn to_json(&self, ground: &GroundSet) -> serde_json::Value {
        let failures: Vec<FailureJson> = self
            .failures
            .iter()
            .map(|f| FailureJson {
                axiom: f.axiom,
                subset: ground.names(f.subset),
                x: f.x.map(|i| ground.label(i)),
                y: f.y.map(|i| ground.label(i)),
            })
            .collect();
        serde_json::json!({
            "passed": self.passed(),
            "exhaustive": self.exhaustive,
            "subsets_checked": self.subsets_checked,
            "failures": failures,
        })
    }
}

impl OrientedMatroid {
    fn build(ground: Arc<GroundSet>, mut hemispaces: Vec<RootSet>, loops: RootSet, vectors: Option<VectorConfig>) -> Self {
        hemispaces.sort();
        hemispaces.dedup();
        OrientedMatroid { ground, hemispaces, loops, vectors, table: OnceLock::new() }
    }

    /// The closure determined by a tope family: hemispaces are topes with
    /// the loops added.
    pub fn from_topes(a: &Preacycloid) -> OrientedMatroid {
        let loops = a.loops();
        let hs = a.topes().iter().map(|&t| t | loops).collect();
        Self::build(a.ground().clone(), hs, loops, None)
    }

    /// Cone matroid of nonzero rational vectors and their negatives.
    pub fn from_vectors(ground: Arc<GroundSet>, dim: usize, vectors: Vec<Vec<Q>>) -> Result<OrientedMatroid> {
        let n = vectors.len();
        if ground.pairs() != n {
            return Err(Error::DimensionMismatch(format!("{} labels for {} vectors", ground.pairs(), n)));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!("vector {i} has length {}", v.len())));
            }
            if v.iter().all(num_traits::Zero::is_zero) {
                return Err(Error::ZeroVector(i));
            }
            for (j, w) in vectors[..i].iter().enumerate() {
                let neg: Vec<Q> = w.iter().map(|x| -x.clone()).collect();
                if v == w || *v == neg {
                    return Err(Error::DuplicateAfterNegation(j, i));
                }
            }
        }
        let cfg = VectorConfig { dim, vectors };
        let topes = half_sets(n)
            .filter(|h| {
                let vs: Vec<Vec<Q>> = h.iter().map(|i| cfg.element(i)).collect();
                feasibility::strict_separator(dim, &vs).is_some()
            })
            .collect();
        let empty = ground.empty();
        Ok(Self::build(ground, topes, empty, Some(cfg)))
    }

    /// Builds the matroid whose closed half sets are read off `closure`.
    fn from_closure(ground: Arc<GroundSet>, closure: impl Fn(RootSet) -> RootSet) -> OrientedMatroid {
        let n = ground.pairs();
        let loops = closure(ground.empty());
        let free: Vec<usize> = (0..n).filter(|&i| !loops.contains(i)).collect();
        let mut hs = Vec::new();
        for mask in 0u64..1 << free.len() {
            let mut h = loops;
            for (k, &i) in free.iter().enumerate() {
                h.insert(if mask >> k & 1 == 1 { i + n } else { i });
            }
            if closure(h) == h {
                hs.push(h);
            }
        }
        Self::build(ground, hs, loops, None)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn pairs(&self) -> usize {
        self.ground.pairs()
    }

    pub fn hemispaces(&self) -> &[RootSet] {
        &self.hemispaces
    }

    pub fn loops(&self) -> RootSet {
        self.loops
    }

    pub fn vectors(&self) -> Option<&VectorConfig> {
        self.vectors.as_ref()
    }

    pub fn topes(&self) -> Vec<RootSet> {
        self.hemispaces.iter().map(|&h| h - self.loops).collect()
    }

    pub fn tope_acycloid(&self) -> Preacycloid {
        Preacycloid::new(self.ground.clone(), self.topes()).expect("hemispaces give a preacycloid")
    }

    /// Intersection of all hemispaces containing `y`.
    pub fn meet(&self, y: RootSet) -> RootSet {
        self.hemispaces.iter().filter(|&&k| y.is_subset(k)).fold(self.ground.full(), |a, &k| a & k)
    }

    fn closure_direct(&self, x: RootSet) -> RootSet {
        let mut seen: Vec<RootSet> = Vec::new();
        let mut out = self.ground.empty();
        for &h in &self.hemispaces {
            let y = x & h;
            if !seen.contains(&y) {
                seen.push(y);
                out = out | self.meet(y);
            }
        }
        out
    }

    fn table(&self) -> &[u64] {
        self.table.get_or_init(|| {
            let size = self.ground.size();
            let n = self.pairs();
            let meets: Vec<u64> = (0u64..1 << size).map(|y| self.meet(RootSet::from_bits(y, n)).bits()).collect();
            (0u64..1 << size)
                .map(|x| self.hemispaces.iter().fold(0u64, |acc, h| acc | meets[(x & h.bits()) as usize]))
                .collect()
        })
    }

    /// Closure `cx(X)`, the union over hemispaces `H` of the hemispace
    /// intersections above `X ∩ H`.
    pub fn closure(&self, x: RootSet) -> RootSet {
        if self.ground.size() <= TABLE_LIMIT {
            RootSet::from_bits(self.table()[x.bits() as usize], self.pairs())
        } else {
            self.closure_direct(x)
        }
    }

    /// Closure of the underlying unoriented matroid.
    pub fn underlying_closure(&self, x: RootSet) -> RootSet {
        self.closure(x | x.involute())
    }

    /// `cone(X) ∩ E` for matroids given by vectors.
    pub fn cone_closure(&self, x: RootSet) -> Option<RootSet> {
        let cfg = self.vectors.as_ref()?;
        let gens: Vec<Vec<Q>> = x.iter().map(|i| cfg.element(i)).collect();
        let mut out = self.ground.empty();
        for e in 0..self.ground.size() {
            if feasibility::cone_contains(cfg.dim, &gens, &cfg.element(e)) {
                out.insert(e);
            }
        }
        Some(out)
    }

    /// Separating functional or infeasibility certificate for a half set.
    pub fn certify_tope(&self, h: RootSet) -> Option<Feasibility> {
        let cfg = self.vectors.as_ref()?;
        let sys: Vec<feasibility::Constraint> =
            h.iter().map(|i| feasibility::Constraint::positive(cfg.element(i))).collect();
        Some(feasibility::solve(cfg.dim, &sys))
    }

    /// Rank of the underlying matroid, by greedy growth of an independent set.
    pub fn rank(&self) -> usize {
        let mut basis = self.ground.empty();
        for e in 0..self.ground.size() {
            if !self.underlying_closure(basis).contains(e) {
                basis.insert(e);
            }
        }
        basis.len()
    }

    pub fn is_simple(&self) -> bool {
        self.tope_acycloid().is_simple()
    }

    /// Minimal nonempty `X` with `X* ⊆ cx(X)`.
    pub fn circuits(&self) -> Result<Vec<Circuit>> {
        let n = self.pairs();
        if self.ground.size() > TABLE_LIMIT {
            return Err(Error::CapExceeded { size: self.ground.size(), cap: TABLE_LIMIT });
        }
        let mut cands: Vec<RootSet> = Vec::new();
        let mut pow3 = 1usize;
        for _ in 0..n {
            pow3 *= 3;
        }
        for code in 1..pow3 {
            let mut c = code;
            let mut s = self.ground.empty();
            for i in 0..n {
                match c % 3 {
                    1 => s.insert(i),
                    2 => s.insert(i + n),
                    _ => {}
                }
                c /= 3;
            }
            cands.push(s);
        }
        for i in 0..n {
            cands.push(self.ground.singleton(i).with(i + n));
        }
        cands.sort_by_key(|s| (s.len(), *s));
        let mut found: Vec<Circuit> = Vec::new();
        for s in cands {
            if found.iter().any(|c| c.members.is_subset(s)) {
                continue;
            }
            if s.involute().is_subset(self.closure(s)) {
                found.push(Circuit { members: s, improper: s == s.involute() });
            }
        }
        Ok(found)
    }

    fn check_hemispace(&self, h: RootSet) -> Result<()> {
        if self.hemispaces.binary_search(&h).is_err() {
            return Err(Error::NotHemispace(self.ground.format(h)));
        }
        Ok(())
    }

    fn extremes_simple(&self, h: RootSet) -> RootSet {
        let mut ex = self.ground.empty();
        for e in h.iter() {
            if !self.closure(h.without(e)).contains(e) {
                ex.insert(e);
            }
        }
        ex
    }

    /// Extreme elements of a hemispace. A matroid that is not simple is
    /// simplified first and the classes of the extreme elements returned.
    pub fn extreme_elements(&self, h: RootSet) -> Result<Extremes> {
        self.check_hemispace(h)?;
        if self.is_simple() {
            return Ok(Extremes { elements: self.extremes_simple(h), classes: None });
        }
        let simp = self.tope_acycloid().simplify();
        let geo = OrientedMatroid::from_topes(&simp.preacycloid);
        let image = class_image(h, &simp.classes);
        let ex = geo.extremes_simple(image);
        let elements = ex.iter().fold(self.ground.empty(), |a, j| a | simp.classes[j]);
        Ok(Extremes { elements, classes: Some(simp.classes) })
    }

    /// Whether every hemispace of the associated geometry has exactly
    /// rank many extreme elements.
    pub fn simplicial_report(&self) -> SimplicialReport {
        let rank = self.rank();
        let (geo, classes) = if self.is_simple() {
            (self.clone(), None)
        } else {
            let simp = self.tope_acycloid().simplify();
            (OrientedMatroid::from_topes(&simp.preacycloid), Some(simp.classes))
        };
        for &h in &self.hemispaces {
            let image = match &classes {
                Some(cl) => class_image(h, cl),
                None => h,
            };
            if geo.extremes_simple(image).len() != rank {
                return SimplicialReport { simplicial: false, rank, witness: Some(h) };
            }
        }
        SimplicialReport { simplicial: true, rank, witness: None }
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial_report().simplicial
    }

    /// First `(X, p, q)` breaking anti-exchange of the closure on `h`.
    pub fn check_anti_exchange(&self, h: RootSet) -> Result<Option<(RootSet, usize, usize)>> {
        self.check_hemispace(h)?;
        if !self.is_simple() {
            return Err(Error::NotSimple("anti-exchange needs a simple matroid".into()));
        }
        for x in h.subsets() {
            let cx = self.meet(x);
            for p in h.iter() {
                let cxp = self.meet(x.with(p));
                for q in h.iter() {
                    if p == q || !cxp.contains(q) || cx.contains(q) {
                        continue;
                    }
                    if self.meet(x.with(q)).contains(p) {
                        return Ok(Some((x, p, q)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// The minor with closure `X ↦ cx(A ∪ X) ∩ B` on the ground set `B`.
    pub fn minor(&self, a: RootSet, b: RootSet) -> Result<OrientedMatroid> {
        if a != a.involute() || b != b.involute() || !a.is_disjoint(b) {
            return Err(Error::BadPartition(format!("{} / {}", self.ground.format(a), self.ground.format(b))));
        }
        let n = self.pairs();
        let keep: Vec<usize> = (0..n).filter(|&i| b.contains(i)).collect();
        let ground = Arc::new(self.ground.restrict_pairs(&keep)?);
        if a.is_empty() {
            let hs: Vec<RootSet> = self.hemispaces.iter().map(|&h| (h & b).restrict_pairs(&keep)).collect();
            let loops = (self.loops & b).restrict_pairs(&keep);
            return Ok(Self::build(ground, hs, loops, None));
        }
        let lift = |x: RootSet| -> RootSet {
            let mut s = self.ground.empty();
            for (j, &i) in keep.iter().enumerate() {
                if x.contains(j) {
                    s.insert(i);
                }
                if x.contains(j + keep.len()) {
                    s.insert(i + n);
                }
            }
            s
        };
        Ok(Self::from_closure(ground, |x| (self.closure(a | lift(x)) & b).restrict_pairs(&keep)))
    }

    pub fn check_matroid_axioms(&self, mode: AxiomMode) -> Result<AxiomReport> {
        let size = self.ground.size();
        let exhaustive = match mode {
            AxiomMode::Exhaustive if size > EXHAUSTIVE_CAP => {
                return Err(Error::CapExceeded { size, cap: EXHAUSTIVE_CAP });
            }
            AxiomMode::Exhaustive | AxiomMode::Forced => true,
            AxiomMode::Sampled { .. } => false,
            AxiomMode::Auto => size <= EXHAUSTIVE_CAP,
        };
        let n = self.pairs();
        let subsets: Vec<RootSet> = if exhaustive {
            self.ground.full().subsets().collect()
        } else {
            let (samples, seed) = match mode {
                AxiomMode::Sampled { samples, seed } => (samples, seed),
                _ => (4096, 0),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let full = self.ground.full().bits();
            (0..samples).map(|_| RootSet::from_bits(rng.gen::<u64>() & full, n)).collect()
        };
        let mut failures: Vec<AxiomFailure> = Vec::new();
        let mut note = |f: AxiomFailure| {
            if !failures.iter().any(|g| g.axiom == f.axiom) {
                failures.push(f);
            }
        };
        let fail = |axiom, subset, x, y| AxiomFailure { axiom, subset, x, y };
        for &x in &subsets {
            let cx = self.closure(x);
            if !x.is_subset(cx) {
                note(fail("M2", x, None, None));
            }
            if self.closure(cx) != cx {
                note(fail("M2", x, None, None));
            }
            for e in 0..size {
                if !x.contains(e) && !cx.is_subset(self.closure(x.with(e))) {
                    note(fail("M2", x, Some(e), None));
                }
            }
            if cx.involute() != self.closure(x.involute()) {
                note(fail("M4", x, None, None));
            }
            for e in 0..size {
                let es = self.ground.involute(e);
                if self.closure(x.with(es)).contains(e) && !cx.contains(e) {
                    note(fail("M5", x, Some(e), None));
                }
            }
            for e in 0..size {
                if cx.contains(e) {
                    continue;
                }
                let es = self.ground.involute(e);
                for y in 0..size {
                    let ys = self.ground.involute(y);
                    if self.closure(x.with(ys)).contains(e) && !self.closure(x.without(y).with(es)).contains(y) {
                        note(fail("M6", x, Some(e), Some(y)));
                    }
                }
            }
        }
        Ok(AxiomReport { exhaustive, subsets_checked: subsets.len(), failures })
    }
}

/// Classes lying inside `h`, as a set of class indices.
fn class_image(h: RootSet, classes: &[RootSet]) -> RootSet {
    let m = classes.len() / 2;
    let mut s = RootSet::empty(m);
    for (j, c) in classes.iter().enumerate() {
        if c.is_subset(h) {
            s.insert(j);
        }
    }
    s
}
