mod common;

use common::*;
use rootoid::sgs::{MorId, ObjId};
use rootoid::squares::{Square, Squares};
use rootoid::{fixtures, Sgs};

/// Topes as raw bit masks, indexed by object.
fn topes(r: &Sgs) -> Vec<u64> {
    r.object_ids().map(|o| r.positive(o).bits()).collect()
}

/// The unique morphism `from -> to` of a trivial-action set.
fn mor(r: &Sgs, from: usize, to: usize) -> MorId {
    r.hom(ObjId(to), ObjId(from))[0]
}

fn ends(r: &Sgs, m: MorId) -> (usize, usize) {
    (r.source(m).0, r.target(m).0)
}

fn sgs(name: &str) -> Sgs {
    fixtures::sgs(name).unwrap()
}

#[test]
fn quadruples_agree_with_reference() {
    for name in ["a1a1", "a2", "b2"] {
        let r = sgs(name);
        let sq = Squares::new(&r).unwrap();
        let t = topes(&r);
        let m = t.len();
        let mut count = 0;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        let s = Square::new(mor(&r, b, d), mor(&r, a, b), mor(&r, c, d), mor(&r, a, c));
                        let got = sq.is_square(&s).unwrap();
                        assert_eq!(got, reference_square(&t, a, b, c, d), "{name} {a}{b}{c}{d}");
                        count += usize::from(got);
                    }
                }
            }
        }
        assert_eq!(sq.inventory().unwrap().len(), count, "{name}");
    }
}

#[test]
fn identity_and_antipodal_squares() {
    let r = sgs("a2");
    let sq = Squares::new(&r).unwrap();
    for w in r.morphism_ids() {
        let s = Square::new(r.identity(r.target(w)), w, w, r.identity(r.source(w)));
        assert!(sq.is_square(&s).unwrap());
        for q in sq.orbit(&s) {
            assert!(sq.is_square(&q).unwrap());
        }
    }
    let mut largest = 0;
    for x in r.morphism_ids() {
        let s = sq.antipodal_square(x).unwrap();
        let orbit = sq.orbit(&s);
        assert!(orbit.len() <= 8);
        assert!(orbit.iter().all(|q| sq.is_square(q).unwrap()));
        largest = largest.max(orbit.len());
    }
    assert_eq!(largest, 8);
}

#[test]
fn atom_pairs_in_the_hexagon() {
    let r = sgs("a2");
    let sq = Squares::new(&r).unwrap();
    let t = topes(&r);
    for d in r.object_ids() {
        let atoms = r.atoms(d);
        assert_eq!(atoms.len(), 2);
        let (x, y) = (atoms[0], atoms[1]);
        let top = sq.join(&[x, y]).unwrap().unwrap();
        let w = r.compose(r.inverse(x), top).unwrap();
        let z = r.compose(r.inverse(y), top).unwrap();
        let s = Square::new(x, w, y, z);
        let (b, _) = ends(&r, x);
        let (c, _) = ends(&r, y);
        let a = r.source(w).0;
        assert_eq!(sq.is_square(&s).unwrap(), reference_square(&t, a, b, c, d.0));
    }
}

#[test]
fn orbits_are_closed() {
    for name in ["a2", "b2"] {
        let r = sgs(name);
        let sq = Squares::new(&r).unwrap();
        let inv = sq.inventory().unwrap();
        for s in &inv.squares {
            let orbit = sq.orbit(s);
            assert!(orbit.len() <= 8);
            for q in &orbit {
                assert!(inv.squares.binary_search(q).is_ok(), "{name}");
                for next in [Square::new(q.y, q.z, q.x, q.w), Square::new(q.w, r.inverse(q.z), r.inverse(q.x), q.y)] {
                    assert!(orbit.contains(&next));
                }
            }
        }
    }
}

#[test]
fn pasting_and_two_of_three() {
    for name in ["a2", "b2"] {
        let r = sgs(name);
        let sq = Squares::new(&r).unwrap();
        let t = topes(&r);
        let inv = sq.inventory().unwrap();
        let mut proper = 0;
        let mut inferred = 0;
        for first in &inv.squares {
            let (b, d) = ends(&r, first.x);
            let a = r.source(first.w).0;
            let c = r.source(first.y).0;
            for b2 in 0..t.len() {
                for d2 in 0..t.len() {
                    let second = Square::new(mor(&r, b2, d2), mor(&r, b, b2), mor(&r, d, d2), first.x);
                    let [s1, s2, s3] = sq.two_of_three(first, &second).unwrap();
                    assert!(s1);
                    assert_eq!(s3, reference_square(&t, a, b2, c, d2));
                    assert_eq!(s2, reference_square(&t, b, b2, d, d2));
                    // any two of the three force the third
                    assert!(!(s1 && s2) || s3);
                    assert!(!(s1 && s3) || s2);
                    if s3 {
                        inferred += 1;
                    }
                    if s2 && !r.is_identity(second.w) && !r.is_identity(first.w) {
                        proper += 1;
                    }
                }
            }
            let id = Square::new(first.x, r.identity(ObjId(b)), r.identity(ObjId(d)), first.x);
            let pasted = sq.compose(first, &id).unwrap();
            assert_eq!(pasted, *first);
        }
        assert!(proper > 0 && inferred > 0, "{name}");
    }
}

#[test]
fn edge_mismatch_is_reported() {
    let r = sgs("a2");
    let sq = Squares::new(&r).unwrap();
    let inv = sq.inventory().unwrap();
    let s = inv.squares.iter().find(|s| !r.is_identity(s.x)).unwrap();
    let other = inv.squares.iter().find(|q| q.z != s.x).unwrap();
    assert!(sq.compose(s, other).is_err());
}

#[test]
fn joins_of_squares() {
    for name in ["a2", "b2"] {
        let r = sgs(name);
        let sq = Squares::new(&r).unwrap();
        let inv = sq.inventory().unwrap();
        let mut pairs = 0;
        for x in r.morphism_ids() {
            let family: Vec<Square> = inv.with_right_edge(x).copied().collect();
            let empty = sq.join_squares(x, &[]).unwrap();
            assert_eq!(empty.w, r.identity(r.source(x)));
            assert_eq!(empty.y, r.identity(r.target(x)));
            for s in &family {
                assert_eq!(sq.join_squares(x, &[*s]).unwrap(), *s);
            }
            for (i, s) in family.iter().enumerate() {
                for q in &family[i + 1..] {
                    let j = sq.join_squares(x, &[*s, *q]).unwrap();
                    assert!(sq.is_square(&j).unwrap());
                    assert!(r.leq(s.w, j.w) && r.leq(q.w, j.w));
                    pairs += 1;
                }
            }
        }
        assert!(pairs > 0);
    }
    let nsimp = sgs("nsimp");
    let sq = Squares::new(&nsimp).unwrap();
    assert!(sq.join_squares(nsimp.identity(ObjId(0)), &[]).is_err());
}

#[test]
fn zigzag_is_the_least_completion() {
    for name in ["a1a1", "a2", "b2"] {
        let r = sgs(name);
        let sq = Squares::new(&r).unwrap();
        let t = topes(&r);
        for x in r.morphism_ids() {
            for y in r.morphisms_into(r.target(x)) {
                if !r.orthogonal(x, y) {
                    assert!(sq.zigzag(y, x).is_err());
                    continue;
                }
                let (b, d) = ends(&r, x);
                let c = r.source(y).0;
                let cands = reference_completions(&t, b, c, d);
                let want = least(&t, d, &cands).expect("a least completion");
                let z = sq.zigzag(y, x).unwrap();
                assert_eq!(r.source(z.result).0, want, "{name}");
                let mut got: Vec<usize> = sq.completions(y, x).unwrap().iter().map(|&m| r.source(m).0).collect();
                got.sort_unstable();
                assert_eq!(got, cands);
                assert!(sq.is_square(&Square::new(x, z.w, z.result, z.z)).unwrap());
                for w in z.trace.windows(2) {
                    assert!(r.leq(w[0].0, w[1].0) && r.leq(w[0].1, w[1].1));
                }
                assert!(z.trace.len() <= r.morphisms_into(r.target(x)).len());
            }
        }
    }
}

#[test]
fn zigzag_examples() {
    let r = sgs("a2");
    let sq = Squares::new(&r).unwrap();
    for d in r.object_ids() {
        let one = r.identity(d);
        for x in r.morphisms_into(d) {
            assert_eq!(sq.zigzag(one, x).unwrap().result, one);
        }
        let atoms = r.atoms(d);
        let z = sq.zigzag(atoms[1], atoms[0]).unwrap();
        assert!(r.leq(atoms[1], z.result));
    }
    let inv = sq.inventory().unwrap();
    for s in &inv.squares {
        if r.orthogonal(s.x, s.y) {
            assert_eq!(sq.zigzag(s.y, s.x).unwrap().result, s.y);
        }
    }
}

#[test]
fn simultaneous_zigzag_against_reference() {
    for name in ["a2", "b2"] {
        let r = sgs(name);
        let sq = Squares::new(&r).unwrap();
        let t = topes(&r);
        let (mut solved, mut unsolvable) = (0, 0);
        for d in r.object_ids() {
            let into = r.morphisms_into(d);
            for &y in &into {
                let c = r.source(y).0;
                for (i, &x1) in into.iter().enumerate() {
                    for &x2 in &into[i..] {
                        if !r.orthogonal(x1, y) || !r.orthogonal(x2, y) {
                            continue;
                        }
                        let fwd = sq.multi_zigzag(y, &[x1, x2]);
                        let back = sq.multi_zigzag(y, &[x2, x1]);
                        match reference_multi(&t, d.0, c, &[r.source(x1).0, r.source(x2).0]) {
                            Some(want) => {
                                let (fwd, back) = (fwd.unwrap(), back.unwrap());
                                assert_eq!(fwd.result, back.result);
                                assert_eq!(r.source(fwd.result).0, want, "{name}");
                                assert!(fwd.squares.iter().all(|s| sq.is_square(s).unwrap()));
                                solved += 1;
                            }
                            None => {
                                // a step against one mark can break orthogonality to the other
                                assert!(fwd.is_err() && back.is_err(), "{name}");
                                unsolvable += 1;
                            }
                        }
                    }
                }
                for &x in &into {
                    if r.orthogonal(x, y) {
                        assert_eq!(sq.multi_zigzag(y, &[x]).unwrap().result, sq.zigzag(y, x).unwrap().result);
                    }
                }
                assert_eq!(sq.multi_zigzag(y, &[r.identity(d), r.identity(d)]).unwrap().result, y);
            }
        }
        assert!(solved > 0 && unsolvable > 0, "{name}");
    }
}

#[test]
fn not_orthogonal_is_reported_with_its_index() {
    let r = sgs("a2");
    let sq = Squares::new(&r).unwrap();
    let d = ObjId(0);
    let a = r.atoms(d)[0];
    let err = sq.multi_zigzag(a, &[r.identity(d), a]).unwrap_err();
    assert!(matches!(err, rootoid::Error::NotOrthogonal { index: 1 }), "{err}");
}

#[test]
fn composition_corollary_holds() {
    for name in ["a2", "b2"] {
        let r = sgs(name);
        let sq = Squares::new(&r).unwrap();
        let t = topes(&r);
        let mut nontrivial = 0;
        for d in r.object_ids() {
            let into = r.morphisms_into(d);
            for &y in &into {
                let c = r.source(y);
                let xsets: Vec<Vec<MorId>> = into
                    .iter()
                    .flat_map(|&x1| into.iter().map(move |&x2| vec![x1, x2]))
                    .chain(into.iter().map(|&x| vec![x]))
                    .collect();
                for xs in &xsets {
                    if xs.iter().any(|&x| !r.orthogonal(x, y)) || sq.multi_zigzag(y, xs).map_or(true, |m| m.result != y) {
                        continue;
                    }
                    for u in r.morphisms_into(c) {
                        let yu = r.compose(y, u).unwrap();
                        if !r.leq(y, yu) || xs.iter().any(|&x| !r.orthogonal(x, yu)) {
                            continue;
                        }
                        let marks: Vec<usize> = xs.iter().map(|&x| r.source(x).0).collect();
                        match reference_multi(&t, d.0, r.source(yu).0, &marks) {
                            Some(_) => {
                                assert!(sq.check_composition(y, u, xs).unwrap(), "{name}");
                                if !r.is_identity(u) {
                                    nontrivial += 1;
                                }
                            }
                            None => assert!(sq.check_composition(y, u, xs).is_err(), "{name}"),
                        }
                    }
                }
                let one = r.identity(c);
                if into.iter().all(|&x| r.orthogonal(x, y)) {
                    assert!(sq.check_composition(y, one, &[]).unwrap());
                }
            }
        }
        assert!(nontrivial > 0, "{name}");
    }
}
