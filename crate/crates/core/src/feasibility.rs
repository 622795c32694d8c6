//! Exact rational feasibility of homogeneous linear systems by
//! Fourier–Motzkin elimination.
//!
//! Every derived constraint carries its nonnegative multipliers over the
//! input, so an infeasible system yields a checkable certificate and a
//! feasible one yields a point found by back-substitution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(a, b))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// `sum c_j y_j >= 0`, or `> 0` when strict.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub strict: bool,
}

impl Constraint {
    pub fn nonneg(coeffs: Vec<Q>) -> Constraint {
        Constraint { coeffs, strict: false }
    }

    pub fn positive(coeffs: Vec<Q>) -> Constraint {
        Constraint { coeffs, strict: true }
    }

    pub fn holds_at(&self, y: &[Q]) -> bool {
        let v = dot(&self.coeffs, y);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }
}

#[derive(Clone, Debug)]
pub enum Feasibility {
    Feasible(Vec<Q>),
    /// Nonnegative multipliers whose combination is the zero functional
    /// with positive weight on some strict constraint.
    Infeasible(Vec<Q>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone)]
struct Row {
    c: Vec<Q>,
    strict: bool,
    mult: Vec<Q>,
}

fn normalize(mut r: Row) -> Row {
    if let Some(lead) = r.c.iter().find(|x| !x.is_zero()).map(|x| x.abs()) {
        if !lead.is_one() {
            for x in r.c.iter_mut().chain(r.mult.iter_mut()) {
                *x = &*x / &lead;
            }
        }
    }
    r
}

/// Drops trivial rows and rows implied by an identical, at least as strict row.
fn prune(rows: Vec<Row>) -> Vec<Row> {
    let mut out: Vec<Row> = Vec::with_capacity(rows.len());
    for r in rows {
        if r.c.iter().all(Zero::is_zero) && !r.strict {
            continue;
        }
        if let Some(o) = out.iter_mut().find(|o| o.c == r.c) {
            if r.strict && !o.strict {
                *o = r;
            }
            continue;
        }
        out.push(r);
    }
    out
}

/// Decides a homogeneous system in `dim` variables.
pub fn solve(dim: usize, constraints: &[Constraint]) -> Feasibility {
    let m = constraints.len();
    let mut rows: Vec<Row> = constraints
        .iter()
        .enumerate()
        .map(|(i, k)| {
            assert_eq!(k.coeffs.len(), dim, "constraint dimension");
            let mut mult = vec![Q::zero(); m];
            mult[i] = Q::one();
            normalize(Row { c: k.coeffs.clone(), strict: k.strict, mult })
        })
        .collect();
    rows = prune(rows);
    let mut stages: Vec<Vec<Row>> = Vec::with_capacity(dim + 1);
    for var in (0..dim).rev() {
        if let Some(bad) = rows.iter().find(|r| r.strict && r.c.iter().all(Zero::is_zero)) {
            return Feasibility::Infeasible(bad.mult.clone());
        }
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in &rows {
            if r.c[var].is_positive() {
                pos.push(r);
            } else if r.c[var].is_negative() {
                neg.push(r);
            } else {
                zero.push(r.clone());
            }
        }
        let mut next = zero;
        for p in &pos {
            for n in &neg {
                let a = -n.c[var].clone();
                let b = p.c[var].clone();
                let c = p.c.iter().zip(&n.c).map(|(x, y)| &a * x + &b * y).collect();
                let mult = p.mult.iter().zip(&n.mult).map(|(x, y)| &a * x + &b * y).collect();
                next.push(normalize(Row { c, strict: p.strict || n.strict, mult }));
            }
        }
        stages.push(rows);
        rows = prune(next);
    }
    if let Some(bad) = rows.iter().find(|r| r.strict) {
        return Feasibility::Infeasible(bad.mult.clone());
    }
    // stages[k] holds the system before eliminating variable dim-1-k.
    let mut y = vec![Q::zero(); dim];
    for var in 0..dim {
        let sys = &stages[dim - 1 - var];
        let mut lo: Option<(Q, bool)> = None;
        let mut hi: Option<(Q, bool)> = None;
        for r in sys {
            let a = &r.c[var];
            if a.is_zero() {
                continue;
            }
            let rest: Q = (0..var).fold(Q::zero(), |acc, j| acc + &r.c[j] * &y[j]);
            let bound = -rest / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|(l, s)| bound > *l || (bound == *l && r.strict && !s)) {
                    lo = Some((bound, r.strict));
                }
            } else if hi.as_ref().is_none_or(|(h, s)| bound < *h || (bound == *h && r.strict && !s)) {
                hi = Some((bound, r.strict));
            }
        }
        y[var] = match (lo, hi) {
            (None, None) => Q::zero(),
            (Some((l, _)), None) => l + Q::one(),
            (None, Some((h, _))) => h - Q::one(),
            (Some((l, _)), Some((h, _))) => (l + h) / q(2),
        };
    }
    Feasibility::Feasible(y)
}

/// Checks a certificate returned for `constraints`.
pub fn verify_certificate(dim: usize, constraints: &[Constraint], mult: &[Q]) -> bool {
    if mult.len() != constraints.len() || mult.iter().any(Signed::is_negative) {
        return false;
    }
    let combo = (0..dim).all(|j| {
        constraints.iter().zip(mult).fold(Q::zero(), |acc, (k, l)| acc + l * &k.coeffs[j]).is_zero()
    });
    let strict_weight = constraints.iter().zip(mult).any(|(k, l)| k.strict && l.is_positive());
    combo && strict_weight
}

/// Whether `target` lies in the closed cone spanned by `gens`.
pub fn cone_contains(dim: usize, gens: &[Vec<Q>], target: &[Q]) -> bool {
    let mut sys: Vec<Constraint> = gens.iter().map(|g| Constraint::nonneg(g.clone())).collect();
    sys.push(Constraint::positive(target.iter().map(|x| -x.clone()).collect()));
    !solve(dim, &sys).is_feasible()
}

/// A functional positive on every vector, if one exists.
pub fn strict_separator(dim: usize, vs: &[Vec<Q>]) -> Option<Vec<Q>> {
    let sys: Vec<Constraint> = vs.iter().map(|v| Constraint::positive(v.clone())).collect();
    match solve(dim, &sys) {
        Feasibility::Feasible(y) => Some(y),
        Feasibility::Infeasible(_) => None,
    }
}

/// Rank of a list of vectors by exact Gaussian elimination.
pub fn rank(vs: &[Vec<Q>]) -> usize {
    let mut rows: Vec<Vec<Q>> = vs.to_vec();
    let dim = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &pivot;
                let base = rows[r].clone();
                for (x, b) in rows[i].iter_mut().zip(&base) {
                    *x -= &f * b;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("-3/6").unwrap(), Q::new(BigInt::from(-1), BigInt::from(2)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn opposite_vectors_have_no_separator() {
        let sys = vec![Constraint::positive(v(&[1, 0])), Constraint::positive(v(&[-1, 0]))];
        match solve(2, &sys) {
            Feasibility::Infeasible(m) => assert!(verify_certificate(2, &sys, &m)),
            Feasibility::Feasible(_) => panic!("expected infeasible"),
        }
    }

    #[test]
    fn separator_is_checked() {
        let vs = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, -1])];
        let y = strict_separator(2, &vs).unwrap();
        assert!(vs.iter().all(|x| dot(x, &y).is_positive()));
    }

    #[test]
    fn cone_membership() {
        let gens = vec![v(&[1, 0]), v(&[0, 1])];
        assert!(cone_contains(2, &gens, &v(&[2, 3])));
        assert!(!cone_contains(2, &gens, &v(&[-1, 3])));
        assert!(cone_contains(2, &gens, &v(&[0, 0])));
    }

    #[test]
    fn rank_of_dependent_vectors() {
        assert_eq!(rank(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])]), 2);
    }
}
