//! Built-in example inputs.
//!
//! Realizable fixtures are vector configurations; the rest are tope lists.
//! Names prefixed with `cox-` are reflection groups acting on one object.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::feasibility::{q, Q};
use crate::format::Input;
use crate::ground::{GroundSet, RootSet};
use crate::preacycloid::Preacycloid;
use crate::sgs::{Sgs, GROUP_CAP};

/// Fixture names in catalogue order.
pub const NAMES: &[&str] = &["a1a1", "a2", "b2", "nsimp", "loops", "nonom", "cox-a1a1", "cox-a2", "cox-b2"];

pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "a1a1" => "two orthogonal lines in the plane",
        "a2" => "three lines in the plane (hexagon)",
        "b2" => "four lines in the plane (octagon)",
        "nsimp" => "four planes in 3-space with a quadrilateral chamber",
        "loops" => "one pair of topes on two pairs, the second pair being loops",
        "nonom" => "acycloid on five pairs that is not an oriented matroid",
        "cox-a1a1" => "reflection group of type A1xA1 acting on one object",
        "cox-a2" => "reflection group of type A2 acting on one object",
        "cox-b2" => "reflection group of type B2 acting on one object",
        _ => return None,
    })
}

fn v(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

fn vector_rows(name: &str) -> Option<(usize, Vec<Vec<Q>>)> {
    Some(match name {
        "a1a1" => (2, vec![v(&[1, 0]), v(&[0, 1])]),
        "a2" => (2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]),
        "b2" => (2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[1, -1])]),
        "nsimp" => (3, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, 1, -1])]),
        _ => return None,
    })
}

/// Sign vectors on five pairs with exactly two or three positive entries.
fn nonom_topes() -> Vec<RootSet> {
    (0u64..32)
        .filter(|m| matches!(m.count_ones(), 2 | 3))
        .map(|m| {
            let pos = RootSet::positives(m, 5);
            pos | (RootSet::positives(!m, 5)).involute()
        })
        .collect()
}

pub fn input(name: &str) -> Result<Input> {
    if let Some((dim, vectors)) = vector_rows(name) {
        let ground = Arc::new(GroundSet::standard(vectors.len())?);
        return Ok(Input::Vectors { ground, dim, vectors });
    }
    match name {
        "loops" => {
            let g = Arc::new(GroundSet::standard(2)?);
            let preacycloid = Preacycloid::from_labels(g.clone(), &[vec!["e1"], vec!["-e1"]])?;
            Ok(Input::Topes { preacycloid, loops_plus: Some(g.parse_list("e2")?) })
        }
        "nonom" => {
            let g = Arc::new(GroundSet::standard(5)?);
            let topes = nonom_topes();
            Ok(Input::Topes { preacycloid: Preacycloid::new(g, topes)?, loops_plus: None })
        }
        _ => Err(Error::Parse(format!("no input fixture named {name}"))),
    }
}

pub fn preacycloid(name: &str) -> Result<Preacycloid> {
    input(name)?.preacycloid()
}

/// Roots, optional form and generator indices of a reflection group.
pub fn coxeter_data(name: &str) -> Option<(Vec<Vec<Q>>, Option<Vec<Vec<Q>>>, Vec<usize>)> {
    let with_negatives = |pos: Vec<Vec<Q>>| -> Vec<Vec<Q>> {
        let neg: Vec<Vec<Q>> = pos.iter().map(|r| r.iter().map(|x| -x.clone()).collect()).collect();
        pos.into_iter().chain(neg).collect()
    };
    Some(match name {
        // simple-root coordinates with the Cartan form
        "cox-a2" => (
            with_negatives(vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]),
            Some(vec![v(&[2, -1]), v(&[-1, 2])]),
            vec![0, 1],
        ),
        "cox-a1a1" => (with_negatives(vec![v(&[1, 0]), v(&[0, 1])]), None, vec![0, 1]),
        "cox-b2" => (with_negatives(vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[1, -1])]), None, vec![3, 1]),
        _ => return None,
    })
}

pub fn coxeter(name: &str) -> Result<Sgs> {
    let (roots, gram, gens) = coxeter_data(name).ok_or_else(|| Error::Parse(format!("no group fixture named {name}")))?;
    Sgs::coxeter_fixture(&roots, gram.as_deref(), &gens, None, GROUP_CAP)
}

/// The signed groupoid set of a fixture.
pub fn sgs(name: &str) -> Result<Sgs> {
    if name.starts_with("cox-") {
        return coxeter(name);
    }
    let inp = input(name)?;
    Sgs::from_preacycloid(&inp.preacycloid()?, inp.loops_plus())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_builds() {
        for name in NAMES {
            assert!(describe(name).is_some());
            sgs(name).unwrap();
        }
    }

    #[test]
    fn tope_counts() {
        let counts: Vec<usize> =
            ["a1a1", "a2", "b2", "nsimp", "loops", "nonom"].iter().map(|n| preacycloid(n).unwrap().topes().len()).collect();
        assert_eq!(counts, vec![4, 6, 8, 14, 2, 20]);
    }
}
