//! Exhaustive search for simple loopless acycloids that are not oriented
//! matroids, deduplicated up to relabeling and reorientation.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ground::{half_sets, GroundSet, RootSet};
use crate::oriented_matroid::{AxiomMode, OrientedMatroid};
use crate::preacycloid::Preacycloid;

/// Largest number of pairs the search accepts.
pub const MAX_SEARCH_PAIRS: usize = 5;

#[derive(Clone, Debug)]
pub struct Candidate {
    pub preacycloid: Preacycloid,
    pub matroidal_by_handa: bool,
    pub matroidal_by_axioms: bool,
}

#[derive(Clone, Debug)]
pub struct SearchLevel {
    pub pairs: usize,
    /// Simple loopless acycloids up to isomorphism, in order of their
    /// canonical keys.
    pub orbits: Vec<Candidate>,
}

impl SearchLevel {
    pub fn non_matroidal(&self) -> impl Iterator<Item = &Candidate> {
        self.orbits.iter().filter(|c| !c.matroidal_by_handa)
    }

    /// Orbits on which the two matroid tests disagree.
    pub fn disagreements(&self) -> usize {
        self.orbits.iter().filter(|c| c.matroidal_by_handa != c.matroidal_by_axioms).count()
    }
}

/// Acycloids on `n` pairs whose tope families are unions of antipodal pairs
/// of half sets, one representative per isomorphism class.
pub fn simple_acycloids(n: usize) -> Result<Vec<Preacycloid>> {
    if n == 0 || n > MAX_SEARCH_PAIRS {
        return Err(Error::CapExceeded { size: n, cap: MAX_SEARCH_PAIRS });
    }
    let ground = Arc::new(GroundSet::standard(n)?);
    // one half set from each antipodal pair: those containing e_n
    let reps: Vec<RootSet> = half_sets(n).filter(|h| h.contains(n - 1)).collect();
    let total = 1u64 << reps.len();
    let found: Vec<(Vec<u64>, Preacycloid)> = (1..total)
        .into_par_iter()
        .filter_map(|mask| {
            let mut topes = Vec::with_capacity(2 * mask.count_ones() as usize);
            for (k, &h) in reps.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    topes.push(h);
                    topes.push(h.involute());
                }
            }
            let a = Preacycloid::new(ground.clone(), topes).ok()?;
            (a.is_simple() && a.is_acycloid()).then(|| (a.canonical_key(), a))
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out: Vec<(Vec<u64>, Preacycloid)> = found.into_iter().filter(|(k, _)| seen.insert(k.clone())).collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out.into_iter().map(|(_, a)| a).collect())
}

/// Runs both matroid tests on every orbit for `1..=max_pairs` pairs.
pub fn search_nonmatroid(max_pairs: usize) -> Result<Vec<SearchLevel>> {
    if max_pairs > MAX_SEARCH_PAIRS {
        return Err(Error::CapExceeded { size: max_pairs, cap: MAX_SEARCH_PAIRS });
    }
    (1..=max_pairs)
        .map(|n| {
            let orbits = simple_acycloids(n)?
                .into_par_iter()
                .map(|a| {
                    let handa = a.handa_test().is_matroidal;
                    let axioms = OrientedMatroid::from_topes(&a).check_matroid_axioms(AxiomMode::Forced)?.passed();
                    Ok(Candidate { preacycloid: a, matroidal_by_handa: handa, matroidal_by_axioms: axioms })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SearchLevel { pairs: n, orbits })
        })
        .collect()
}
