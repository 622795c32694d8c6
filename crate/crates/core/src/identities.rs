//! Executable identities between inversion sets, weak orders, flags and
//! constructions. Every check returns the list of violations it found; an
//! empty list means the identity holds on the given instance.

use crate::brink_howlett::{hypercontract, hypercontract_at};
use crate::error::Result;
use crate::ground::RootSet;
use crate::sgs::{MorId, ObjId, PropertyReport, Sgs};

fn composable_pairs(r: &Sgs) -> impl Iterator<Item = (MorId, MorId)> + '_ {
    r.morphism_ids().flat_map(move |f| r.morphisms_into(r.source(f)).into_iter().map(move |g| (f, g)))
}

/// `Φ_{fg} = (Φ_f \ -fΦ_g) ∪̇ (fΦ_g \ -Φ_f)`.
pub fn cocycle(r: &Sgs) -> Vec<String> {
    let mut out = Vec::new();
    for (f, g) in composable_pairs(r) {
        let fg = r.compose(f, g).expect("closed");
        let pf = r.inversion(f);
        let fpg = r.apply(f, r.inversion(g));
        let left = pf - fpg.involute();
        let right = fpg - pf.involute();
        if !left.is_disjoint(right) || r.inversion(fg) != (left | right) {
            out.push(format!("{} after {}", r.describe(f), r.describe(g)));
        }
    }
    out
}

/// `Φ_{h⁻¹} = -h⁻¹(Φ_h)`.
pub fn inverse_inversion(r: &Sgs) -> Vec<String> {
    r.morphism_ids()
        .filter(|&h| {
            let hi = r.inverse(h);
            r.inversion(hi) != r.apply(hi, r.inversion(h)).involute()
        })
        .map(|h| r.describe(h))
        .collect()
}

/// `Φ_{f⁻¹} ∩ Φ_g = ∅`, `Φ_f ⊆ Φ_{fg}` and `Φ_{fg} = Φ_f ∪̇ fΦ_g` are
/// equivalent for composable `f, g`.
pub fn three_way(r: &Sgs) -> Vec<String> {
    let mut out = Vec::new();
    for (f, g) in composable_pairs(r) {
        let fg = r.compose(f, g).expect("closed");
        let a = r.inversion(r.inverse(f)).is_disjoint(r.inversion(g));
        let b = r.inversion(f).is_subset(r.inversion(fg));
        let fpg = r.apply(f, r.inversion(g));
        let c = r.inversion(f).is_disjoint(fpg) && r.inversion(fg) == (r.inversion(f) | fpg);
        if a != b || b != c {
            out.push(format!("{} after {}: {a} {b} {c}", r.describe(f), r.describe(g)));
        }
    }
    out
}

/// `Φ_h = Φ_g` iff `Φ_{h⁻¹g} = ∅`, for `g, h` with a common codomain.
pub fn equal_inversion_sets(r: &Sgs) -> Vec<String> {
    let mut out = Vec::new();
    for a in r.object_ids() {
        let into = r.morphisms_into(a);
        for &g in &into {
            for &h in &into {
                let q = r.compose(r.inverse(h), g).expect("closed");
                if (r.inversion(g) == r.inversion(h)) != r.inversion(q).is_empty() {
                    out.push(format!("{} / {}", r.describe(g), r.describe(h)));
                }
            }
        }
    }
    out
}

fn all_atoms_simple(r: &Sgs) -> bool {
    r.object_ids().all(|a| r.atoms(a).iter().all(|&s| r.inversion(s).len() == 1))
}

/// Implications between computed flags: atoms simple implies principal,
/// principal implies preprincipal, and complete iff rootoidal and antipodal.
pub fn flag_implications(r: &Sgs, rep: &PropertyReport) -> Vec<String> {
    let mut out = Vec::new();
    if rep.faithful.holds && all_atoms_simple(r) && !rep.principal.holds {
        out.push("every atom is simple but the set is not principal".into());
    }
    if rep.principal.holds && !rep.preprincipal.holds {
        out.push("principal but not preprincipal".into());
    }
    if rep.complete.holds != (rep.rootoidal_jop.holds && rep.antipodal.holds) {
        out.push(format!(
            "complete = {} but rootoidal = {} and antipodal = {}",
            rep.complete.holds, rep.rootoidal_jop.holds, rep.antipodal.holds
        ));
    }
    out
}

/// `|Φ_g| ≤ l(g)` for lengths over simple morphisms, when they generate.
pub fn length_bound(r: &Sgs) -> Vec<String> {
    let simples: Vec<MorId> = r.object_ids().flat_map(|a| r.simple_morphisms(a)).collect();
    let len = r.lengths(&simples);
    r.morphism_ids()
        .filter(|m| len[m.0].is_some_and(|l| r.inversion(*m).len() > l))
        .map(|m| r.describe(m))
        .collect()
}

/// Facts about the antipode `ω_a` and `g⊥ = gω_b` at antipodal objects.
pub fn antipode_facts(r: &Sgs) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for a in r.object_ids() {
        let Ok(omega) = r.antipode(a) else { continue };
        let name = &r.object(a).name;
        if r.inversion(omega) != r.real_positive(a) {
            out.push(format!("antipode at {name} does not invert every real positive root"));
        }
        let b = r.source(omega);
        if r.antipode(b).ok() != Some(r.inverse(omega)) {
            out.push(format!("inverse of the antipode at {name} is not the antipode at its source"));
        }
        let into = r.morphisms_into(a);
        let mut perp = Vec::with_capacity(into.len());
        for &g in &into {
            perp.push(r.orthocomplement(g)?);
        }
        for (i, &g) in into.iter().enumerate() {
            let gp = perp[i];
            let d = r.describe(g);
            if r.inversion(gp) != r.inversion(omega) - r.inversion(g) {
                out.push(format!("inversion set of the complement of {d}"));
            }
            if r.orthocomplement(gp)? != g {
                out.push(format!("complement of {d} is not involutive"));
            }
            if r.join(a, &[g, gp])? != Some(omega) || r.meet(a, &[g, gp])? != Some(r.identity(a)) {
                out.push(format!("join or meet with the complement of {d}"));
            }
            for (j, &h) in into.iter().enumerate() {
                if r.orthogonal(g, h) != r.leq(g, perp[j]) {
                    out.push(format!("orthogonality of {d} and {}", r.describe(h)));
                }
                if r.leq(g, h) && !r.leq(perp[j], gp) {
                    out.push(format!("complement does not reverse {d} <= {}", r.describe(h)));
                }
            }
        }
    }
    Ok(out)
}

/// Real compression keeps completeness, rootoidality, antipodality and
/// preprincipality, is real and compressed, and for preprincipal input the
/// length over atoms equals the number of classes in an inversion set.
pub fn compression_facts(r: &Sgs, rep: &PropertyReport) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let comp = r.real_compression()?;
    let c = &comp.sgs;
    let crep = c.check_properties();
    for flag in ["complete", "rootoidal_jop", "antipodal", "preprincipal"] {
        if rep.holds(flag) != crep.holds(flag) {
            out.push(format!("{flag} changes under compression"));
        }
    }
    if !crep.real.holds || !crep.compressed.holds {
        out.push("compression is not real and compressed".into());
    }
    if c.morphism_count() != r.morphism_count() {
        out.push("compression merged morphisms".into());
        return Ok(out);
    }
    if rep.preprincipal.holds {
        let atoms: Vec<MorId> = r.object_ids().flat_map(|a| r.atoms(a)).collect();
        let len = r.lengths(&atoms);
        for m in r.morphism_ids() {
            if len[m.0] != Some(c.inversion(m).len()) {
                out.push(format!("length of {} over atoms differs from its class count", r.describe(m)));
            }
        }
    }
    Ok(out)
}

/// In a preprincipal set the parallelism classes of real roots at `a` are
/// exactly the sets `x(Φ_s)` for atoms `s` and morphisms `x` into `a`.
pub fn classes_from_atoms(r: &Sgs) -> Vec<String> {
    let mut out = Vec::new();
    for a in r.object_ids() {
        let pairs = r.ground(a).pairs();
        let real = r.real_roots(a);
        let mut classes: Vec<RootSet> =
            r.dominance(a).classes(pairs).into_iter().filter(|c| c.is_subset(real)).collect();
        let mut images = Vec::new();
        for x in r.morphisms_into(a) {
            for s in r.atoms(r.source(x)) {
                images.push(r.apply(x, r.inversion(s)));
            }
        }
        classes.sort_unstable();
        images.sort_unstable();
        images.dedup();
        if classes != images {
            out.push(format!("classes at {} are not the atom images", r.object(a).name));
        }
    }
    out
}

/// Hypercontraction by marks makes their inversion sets imaginary; with one
/// mark on an antipodal set the new imaginary roots are exactly those.
pub fn imaginary_growth(r: &Sgs, antipodal: bool) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for g in r.morphism_ids() {
        let h = hypercontract_at(r, g)?;
        let im = h.sgs.imaginary_positive(ObjId(0));
        let phi = r.inversion(g);
        if !phi.is_subset(im) {
            out.push(format!("inversion set of {} is not imaginary after contraction", r.describe(g)));
        }
        let a = r.target(g);
        if antipodal && im != (phi | r.imaginary_positive(a)) {
            out.push(format!("imaginary roots after contracting {}", r.describe(g)));
        }
    }
    // two marks at a time along the first object
    let into = r.morphisms_into(ObjId(0));
    for (i, &g) in into.iter().enumerate() {
        for &k in &into[i + 1..] {
            let h = hypercontract(r, ObjId(0), &[g, k])?;
            if !(r.inversion(g) | r.inversion(k)).is_subset(h.sgs.imaginary_positive(ObjId(0))) {
                out.push(format!("marks {} and {} are not imaginary", r.describe(g), r.describe(k)));
            }
        }
    }
    Ok(out)
}

/// The number of marks and the multiset of their sizes are constant along
/// the component of a box object.
pub fn component_size_law(r: &Sgs) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for g in r.morphism_ids() {
        let h = hypercontract_at(r, g)?;
        let sizes = |marks: &[MorId]| {
            let mut v: Vec<usize> = marks.iter().map(|&m| r.inversion(m).len()).collect();
            v.sort_unstable();
            v
        };
        let first = sizes(&h.boxes[0].marks);
        if h.boxes.iter().any(|b| sizes(&b.marks) != first) {
            out.push(format!("mark sizes vary in the component of {}", r.describe(g)));
        }
    }
    Ok(out)
}

/// `PA(R // g) = PA(R) // Φ_g` for connected, simply connected, antipodal `R`.
pub fn contraction_commutes(r: &Sgs) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let pa = r.pa_of()?;
    let base = ObjId(0);
    for g in r.morphism_ids() {
        let u = r.hom(base, r.target(g))[0];
        let gamma = r.apply(u, r.inversion(g));
        let left = hypercontract_at(r, g)?.sgs.pa_of()?;
        let right = pa.quasicontract(gamma);
        if left.topes() != right.topes() {
            out.push(format!("contraction at {}", r.describe(g)));
        }
    }
    Ok(out)
}

/// `PA(SGS(PA(R)))` reproduces `PA(R)`, and `SGS(PA(R))` is isomorphic to the
/// real part of `R` when `R` is real.
pub fn round_trips(r: &Sgs) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let pa = r.pa_of()?;
    let back = Sgs::from_preacycloid(&pa, None)?;
    if back.pa_of()?.topes() != pa.topes() {
        out.push("tope family changes on a round trip".into());
    }
    if r.imaginary_positive(ObjId(0)).is_empty() && r.simply_connected_isomorphism(&back)?.is_none() {
        out.push("the rebuilt signed groupoid set is not isomorphic".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn hexagon_satisfies_all() {
        let r = fixtures::sgs("a2").unwrap();
        let rep = r.check_properties();
        assert!(cocycle(&r).is_empty());
        assert!(three_way(&r).is_empty());
        assert!(flag_implications(&r, &rep).is_empty());
        assert!(antipode_facts(&r).unwrap().is_empty());
        assert!(compression_facts(&r, &rep).unwrap().is_empty());
        assert!(contraction_commutes(&r).unwrap().is_empty());
        assert!(round_trips(&r).unwrap().is_empty());
    }
}
