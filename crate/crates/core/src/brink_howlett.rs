//! The box groupoid over a signed groupoid set: objects are an object
//! together with a set of morphisms into it, and morphisms are the
//! morphisms of the base carrying those marks onto each other's inversion
//! sets. Components of it are hypercontractions.

use std::collections::{HashMap, HashSet, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ground::RootSet;
use crate::sgs::{MorId, MorphismSpec, ObjId, Object, PropertyReport, Sgs};

/// Default bound on the number of nodes in a quasicontraction tree.
pub const TREE_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxObject {
    pub base: ObjId,
    /// Sorted, without duplicates.
    pub marks: Vec<MorId>,
}

impl BoxObject {
    pub fn new(base: ObjId, mut marks: Vec<MorId>) -> BoxObject {
        marks.sort_unstable();
        marks.dedup();
        BoxObject { base, marks }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxMorphism {
    pub underlying: MorId,
    /// `(g, σ(g))` for every mark `g` of the source.
    pub pairing: Vec<(MorId, MorId)>,
}

/// Marks at the codomain of `f` matching the marks `x` at its domain, if `f`
/// carries every inversion set in `x` onto an inversion set.
pub fn box_image(r: &Sgs, f: MorId, x: &[MorId]) -> Option<Vec<(MorId, MorId)>> {
    let b = r.target(f);
    x.iter()
        .map(|&g| r.with_inversion(b, r.apply(f, r.inversion(g))).map(|h| (g, h)))
        .collect()
}

fn is_trivial_action(r: &Sgs) -> bool {
    let g0 = r.ground(ObjId(0));
    r.objects().iter().all(|o| o.ground == *g0)
        && r.morphism_ids().all(|m| r.action(m).iter().enumerate().all(|(i, &j)| i == j as usize))
}

/// The shortcut for trivial action: the unique `f: a -> b` works iff each
/// `Φ_g` lies in the positive system at `b` and flipping it there yields
/// another object's positive system.
fn trivial_box_image(r: &Sgs, b: ObjId, x: &[MorId]) -> Option<Vec<(MorId, MorId)>> {
    let pos_b = r.positive(b);
    let by_positive: HashMap<RootSet, ObjId> = r.object_ids().map(|o| (r.positive(o), o)).collect();
    x.iter()
        .map(|&g| {
            let phi = r.inversion(g);
            if !phi.is_subset(pos_b) {
                return None;
            }
            let c = *by_positive.get(&((pos_b - phi) | phi.involute()))?;
            Some((g, r.hom(b, c)[0]))
        })
        .collect()
}

fn same_marks(p: &[(MorId, MorId)], y: &[MorId]) -> bool {
    let mut img: Vec<MorId> = p.iter().map(|&(_, h)| h).collect();
    img.sort_unstable();
    img.dedup();
    img == y
}

/// All box morphisms `(a,X) -> (b,Y)`. For trivial action both the direct
/// scan and the shortcut are evaluated and must agree.
pub fn box_hom(r: &Sgs, from: &BoxObject, to: &BoxObject) -> Result<Vec<BoxMorphism>> {
    let mut out = Vec::new();
    for f in r.hom(to.base, from.base) {
        if let Some(p) = box_image(r, f, &from.marks) {
            if same_marks(&p, &to.marks) {
                out.push(BoxMorphism { underlying: f, pairing: p });
            }
        }
    }
    if is_trivial_action(r) {
        let short = trivial_box_image(r, to.base, &from.marks).filter(|p| same_marks(p, &to.marks));
        let direct = out.first().map(|m| &m.pairing);
        if short.as_ref() != direct {
            return Err(Error::Inconsistent(format!(
                "box morphism criteria disagree between {} and {}",
                r.object(from.base).name,
                r.object(to.base).name
            )));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Hypercontraction {
    pub sgs: Sgs,
    /// Box object behind each object of `sgs`; the first is the start.
    pub boxes: Vec<BoxObject>,
}

impl Hypercontraction {
    /// `{ "base", "marks", "result_topes", "imaginary" }`, with topes given
    /// by their positive systems.
    pub fn descriptor(&self, r: &Sgs) -> Value {
        let start = &self.boxes[0];
        let trivial = is_trivial_action(r);
        let marks: Vec<String> = start
            .marks
            .iter()
            .map(|&g| if trivial { r.object(r.source(g)).name.clone() } else { r.label(g).to_string() })
            .collect();
        let a = ObjId(0);
        let g = self.sgs.ground(a);
        let result = self
            .sgs
            .pa_of()
            .ok()
            .map(|p| Value::from(p.topes().iter().map(|&t| Value::from(g.names(t))).collect::<Vec<_>>()));
        json!({
            "base": r.object(start.base).name,
            "marks": marks,
            "result_topes": result.unwrap_or(Value::Null),
            "imaginary": g.names(self.sgs.imaginary_positive(a)),
        })
    }
}

fn box_name(r: &Sgs, b: &BoxObject) -> String {
    let marks: Vec<String> = b.marks.iter().map(|&g| r.ground(b.base).format(r.inversion(g))).collect();
    if marks.is_empty() {
        r.object(b.base).name.clone()
    } else {
        format!("{}//[{}]", r.object(b.base).name, marks.join(";"))
    }
}

fn require_faithful(r: &Sgs) -> Result<()> {
    for a in r.object_ids() {
        if let Some((g, h)) = r.faithfulness_failure(a) {
            return Err(Error::NotFaithful(format!("{} / {}", r.describe(g), r.describe(h))));
        }
    }
    Ok(())
}

/// The component of `(a, X)` in the box groupoid, as a standalone signed
/// groupoid set with the inherited roots.
pub fn hypercontract(r: &Sgs, a: ObjId, marks: &[MorId]) -> Result<Hypercontraction> {
    require_faithful(r)?;
    if let Some(&g) = marks.iter().find(|&&g| r.target(g) != a) {
        return Err(Error::NotComposable(format!("mark {} does not end at {}", r.describe(g), r.object(a).name)));
    }
    let start = BoxObject::new(a, marks.to_vec());
    let mut index: HashMap<BoxObject, usize> = HashMap::from([(start.clone(), 0)]);
    let mut boxes = vec![start];
    let mut edges: Vec<(usize, usize, MorId)> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let cur = boxes[k].clone();
        for b in r.object_ids() {
            for f in r.hom(b, cur.base) {
                let Some(p) = box_image(r, f, &cur.marks) else { continue };
                let next = BoxObject::new(b, p.into_iter().map(|(_, h)| h).collect());
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = boxes.len();
                        index.insert(next.clone(), j);
                        boxes.push(next);
                        queue.push_back(j);
                        j
                    }
                };
                if !r.is_identity(f) {
                    edges.push((k, j, f));
                }
            }
        }
    }
    let objects = boxes
        .iter()
        .map(|bx| {
            let o = r.object(bx.base);
            Object { name: box_name(r, bx), ground: o.ground.clone(), positive: o.positive }
        })
        .collect();
    let specs = edges
        .into_iter()
        .map(|(k, j, f)| MorphismSpec {
            source: ObjId(k),
            target: ObjId(j),
            action: r.action(f).to_vec(),
            label: Some(r.label(f).to_string()),
        })
        .collect();
    Ok(Hypercontraction { sgs: Sgs::new(objects, specs)?, boxes })
}

/// `R // g`: the hypercontraction at the codomain of `g` marked by `g`.
pub fn hypercontract_at(r: &Sgs, g: MorId) -> Result<Hypercontraction> {
    hypercontract(r, r.target(g), &[g])
}

/// The hypercontraction recipe phrased on topes: with
/// `U = {H ∩ K* : K ∈ X}`, keep the topes `F` for which every member of `U`
/// has the form `F ∩ K*`, and remove their common part.
pub fn hypercontract_topes(topes: &[RootSet], h: RootSet, x: &[RootSet]) -> Vec<RootSet> {
    let u: Vec<RootSet> = x.iter().map(|&k| h & k.involute()).collect();
    let kept: Vec<RootSet> = topes
        .iter()
        .copied()
        .filter(|&f| {
            let cuts: HashSet<RootSet> = topes.iter().map(|&k| f & k.involute()).collect();
            u.iter().all(|s| cuts.contains(s))
        })
        .collect();
    let Some(&first) = kept.first() else { return Vec::new() };
    let common = kept.iter().fold(first, |acc, &f| acc & f);
    let mut out: Vec<RootSet> = kept.into_iter().map(|f| f - common).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// One elementary step: contract at object `object` by the atom whose
/// inversion set is `mark`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub object: String,
    pub mark: String,
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub sgs: Sgs,
    pub path: Vec<Step>,
    pub parent: Option<usize>,
    pub preprincipal: bool,
    pub report: Option<PropertyReport>,
}

#[derive(Clone, Debug)]
pub struct QuasicontractionTree {
    pub nodes: Vec<TreeNode>,
    /// First node, in breadth-first order, that is not preprincipal.
    pub first_failure: Option<usize>,
}

impl QuasicontractionTree {
    pub fn hereditarily_preprincipal(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn describe_path(&self, k: usize) -> String {
        let steps: Vec<String> = self.nodes[k].path.iter().map(|s| format!("{} // {}", s.object, s.mark)).collect();
        if steps.is_empty() {
            "component".into()
        } else {
            steps.join(" -> ")
        }
    }
}

fn node_key(r: &Sgs) -> Option<Vec<u64>> {
    let sc = r.object_ids().all(|a| r.object_ids().all(|b| r.hom(a, b).len() <= 1));
    sc.then(|| r.exact_key())
}

/// All quasicontractions: components of `r`, then repeated hypercontraction
/// at freshly computed atoms. Simply connected nodes are deduplicated by
/// their transported positive systems.
pub fn quasicontraction_tree(r: &Sgs, with_reports: bool, cap: usize) -> Result<QuasicontractionTree> {
    require_faithful(r)?;
    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut covered = vec![false; r.object_count()];
    let mut queue = VecDeque::new();
    let push = |sgs: Sgs, path: Vec<Step>, parent: Option<usize>, nodes: &mut Vec<TreeNode>, seen: &mut HashSet<Vec<u64>>, queue: &mut VecDeque<usize>| -> Result<()> {
        if let Some(k) = node_key(&sgs) {
            if !seen.insert(k) {
                return Ok(());
            }
        }
        if nodes.len() >= cap {
            return Err(Error::CapExceeded { size: nodes.len() + 1, cap });
        }
        let report = sgs.check_properties();
        let preprincipal = report.preprincipal.holds;
        nodes.push(TreeNode { sgs, path, parent, preprincipal, report: with_reports.then_some(report) });
        queue.push_back(nodes.len() - 1);
        Ok(())
    };
    for a in r.object_ids() {
        if covered[a.0] {
            continue;
        }
        for o in r.component_of(a) {
            covered[o.0] = true;
        }
        let comp = hypercontract(r, a, &[])?.sgs;
        push(comp, Vec::new(), None, &mut nodes, &mut seen, &mut queue)?;
    }
    while let Some(k) = queue.pop_front() {
        let node = nodes[k].sgs.clone();
        for a in node.object_ids() {
            for s in node.atoms(a) {
                let child = hypercontract(&node, a, &[s])?.sgs;
                let mut path = nodes[k].path.clone();
                path.push(Step { object: node.object(a).name.clone(), mark: node.ground(a).format(node.inversion(s)) });
                push(child, path, Some(k), &mut nodes, &mut seen, &mut queue)?;
            }
        }
    }
    let first_failure = nodes.iter().position(|n| !n.preprincipal);
    Ok(QuasicontractionTree { nodes, first_failure })
}

/// `None` when every quasicontraction is preprincipal, otherwise the path to
/// the first one that is not.
pub fn hereditary_preprincipality(r: &Sgs) -> Result<Option<String>> {
    let tree = quasicontraction_tree(r, false, TREE_CAP)?;
    Ok(tree.first_failure.map(|k| tree.describe_path(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn empty_marks_give_the_component() {
        let r = fixtures::sgs("a2").unwrap();
        let h = hypercontract(&r, ObjId(0), &[]).unwrap();
        assert_eq!(h.sgs.object_count(), 6);
        assert_eq!(h.sgs.morphism_count(), 36);
    }

    #[test]
    fn tope_recipe_on_the_hexagon() {
        let a = fixtures::preacycloid("a2").unwrap();
        let g = a.ground();
        let h = g.parse_list("e1,e2,e3").unwrap();
        let k = g.parse_list("-e1,e2,e3").unwrap();
        let s = hypercontract_topes(a.topes(), h, &[k]);
        let names: Vec<String> = s.iter().map(|&t| g.format(t)).collect();
        assert_eq!(names, vec!["{e2,e3}", "{-e2,-e3}"]);
    }

    #[test]
    fn hexagon_is_hereditarily_preprincipal() {
        let r = fixtures::sgs("a2").unwrap();
        assert_eq!(hereditary_preprincipality(&r).unwrap(), None);
    }
}
