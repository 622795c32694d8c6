//! Brute-force reference implementations used by the integration tests.
//!
//! Everything here works on raw bitmasks over `2n` elements, positives in
//! the low `n` bits and their involutes in the high `n` bits, and is written
//! without calling into the library's algorithms.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use proptest::prelude::*;

pub fn full(n: usize) -> u64 {
    (1u64 << (2 * n)) - 1
}

pub fn neg(s: u64, n: usize) -> u64 {
    let low = (1u64 << n) - 1;
    ((s & low) << n) | (s >> n)
}

pub fn subsets(s: u64) -> Vec<u64> {
    let mut out = vec![0];
    let mut t = s;
    while t != 0 {
        t = (t - 1) & s;
        out.push(t);
    }
    out.sort_unstable();
    out
}

/// Sign vector of `(sign(f·v_i))_i` as a root set, or `None` if a sign is zero.
pub fn sign_set(f: &[i64], vectors: &[Vec<i64>]) -> Option<u64> {
    let n = vectors.len();
    let mut s = 0;
    for (i, v) in vectors.iter().enumerate() {
        let d: i64 = f.iter().zip(v).map(|(a, b)| a * b).sum();
        match d.signum() {
            1 => s |= 1 << i,
            -1 => s |= 1 << (i + n),
            _ => return None,
        }
    }
    Some(s)
}

/// Chambers of a central arrangement found by scanning integer functionals
/// in a box; enough for arrangements of small integer vectors.
pub fn grid_topes(vectors: &[Vec<i64>], radius: i64) -> Vec<u64> {
    let d = vectors[0].len();
    let mut out = Vec::new();
    let mut f = vec![-radius; d];
    loop {
        if let Some(s) = sign_set(&f, vectors) {
            out.push(s);
        }
        let mut k = 0;
        while k < d && f[k] == radius {
            f[k] = -radius;
            k += 1;
        }
        if k == d {
            break;
        }
        f[k] += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Rank of an integer matrix (rows are vectors), by fraction-free elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
            }
        }
        r += 1;
    }
    r
}

/// Elements in no tope.
pub fn loops(n: usize, topes: &[u64]) -> u64 {
    full(n) & !topes.iter().fold(0, |a, &t| a | t)
}

/// `cx(X)`: union over hemispaces `H` of the intersection of all
/// hemispaces containing `X ∩ H`, where hemispaces are topes plus loops.
pub fn closure(n: usize, topes: &[u64], x: u64) -> u64 {
    let l = loops(n, topes);
    let hemis: Vec<u64> = topes.iter().map(|&t| t | l).collect();
    let mut out = 0;
    for &h in &hemis {
        let y = x & h;
        out |= hemis.iter().filter(|&&k| y & k == y).fold(full(n), |a, &k| a & k);
    }
    out
}

/// First failing closure axiom among extensive, monotone, idempotent,
/// sign symmetry, elimination and exchange, over all subsets.
pub fn first_axiom_failure(n: usize, cl: &dyn Fn(u64) -> u64) -> Option<&'static str> {
    let size = 2 * n;
    let table: Vec<u64> = (0..1u64 << size).map(cl).collect();
    let c = |x: u64| table[x as usize];
    for x in 0..1u64 << size {
        let cx = c(x);
        if cx & x != x {
            return Some("extensive");
        }
        if c(cx) != cx {
            return Some("idempotent");
        }
        if neg(cx, n) != c(neg(x, n)) {
            return Some("sign symmetry");
        }
        for e in 0..size {
            let b = 1u64 << e;
            if cx & !c(x | b) != 0 {
                return Some("monotone");
            }
            let star = neg(b, n);
            if c(x | star) & b != 0 && cx & b == 0 {
                return Some("elimination");
            }
        }
        for e in 0..size {
            let xb = 1u64 << e;
            for f in 0..size {
                let yb = 1u64 << f;
                if c(x | neg(yb, n)) & xb != 0 && cx & xb == 0 && c((x & !yb) | neg(xb, n)) & yb == 0 {
                    return Some("exchange");
                }
            }
        }
    }
    None
}

/// Parallelism classes of non-loops: elements with equal tope membership.
pub fn classes(n: usize, topes: &[u64]) -> Vec<u64> {
    let l = loops(n, topes);
    let mut out: Vec<u64> = Vec::new();
    for e in 0..2 * n {
        if l >> e & 1 == 1 {
            continue;
        }
        let profile = |i: usize| topes.iter().map(|&t| t >> i & 1).collect::<Vec<_>>();
        let mut class = 0;
        for f in 0..2 * n {
            if l >> f & 1 == 0 && profile(f) == profile(e) {
                class |= 1 << f;
            }
        }
        if !out.contains(&class) {
            out.push(class);
        }
    }
    out.sort_unstable();
    out
}

/// Wall-crossing: for all distinct topes `H1, H2` some class inside
/// `H1 \ H2` can be flipped within the family.
pub fn is_acycloid(n: usize, topes: &[u64]) -> bool {
    if topes.is_empty() {
        return false;
    }
    let cls = classes(n, topes);
    for &h1 in topes {
        for &h2 in topes {
            if h1 == h2 {
                continue;
            }
            let ok = cls.iter().any(|&c| c & h1 == c && c & h2 == 0 && topes.contains(&((h1 & !c) | neg(c, n))));
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Topes `H ⊇ Γ` whose `Γ`-flip is a tope, with `Γ` removed.
pub fn quasicontract(n: usize, topes: &[u64], gamma: u64) -> Vec<u64> {
    let g = neg(gamma, n);
    let mut out: Vec<u64> = topes
        .iter()
        .filter(|&&h| h & gamma == gamma && topes.contains(&((h & !gamma) | g)))
        .map(|&h| h & !gamma)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Every iterated quasicontraction at parallelism classes is an acycloid.
pub fn handa(n: usize, topes: &[u64]) -> bool {
    fn go(n: usize, topes: Vec<u64>, memo: &mut HashMap<Vec<u64>, bool>) -> bool {
        if let Some(&v) = memo.get(&topes) {
            return v;
        }
        let mut ok = is_acycloid(n, &topes);
        if ok {
            for c in classes(n, &topes) {
                if !go(n, quasicontract(n, &topes, c), memo) {
                    ok = false;
                    break;
                }
            }
        }
        memo.insert(topes, ok);
        ok
    }
    let mut t = topes.to_vec();
    t.sort_unstable();
    go(n, t, &mut HashMap::new())
}

/// Flags of the groupoid with one object per tope and trivial action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopeFlags {
    pub real: bool,
    pub compressed: bool,
    pub complete: bool,
    pub preprincipal: bool,
    pub principal: bool,
    pub atomically_generated: bool,
}

fn is_sub(a: u64, b: u64) -> bool {
    a & b == a
}

/// Whether inclusion restricted to `sets` is a lattice.
pub fn is_lattice(sets: &[u64]) -> bool {
    let least = |cands: &[u64]| cands.iter().copied().find(|&c| cands.iter().all(|&d| is_sub(c, d)));
    if least(sets).is_none() {
        return false;
    }
    let tops: Vec<u64> = sets.iter().copied().filter(|&c| sets.iter().all(|&d| is_sub(d, c))).collect();
    if tops.is_empty() {
        return false;
    }
    for &p in sets {
        for &q in sets {
            let ups: Vec<u64> = sets.iter().copied().filter(|&u| is_sub(p, u) && is_sub(q, u)).collect();
            if least(&ups).is_none() {
                return false;
            }
        }
    }
    true
}

pub fn tope_flags(n: usize, topes: &[u64]) -> TopeFlags {
    let l = loops(n, topes);
    let m = topes.len();
    // inversion set of the morphism from tope j into tope i
    let inv = |i: usize, j: usize| topes[i] & !topes[j];
    // imaginary positives are always parallel to one another
    let mut compressed = (l & ((1 << n) - 1)).count_ones() <= 1;
    for e in 0..2 * n {
        for f in 0..e {
            if (l >> e | l >> f) & 1 == 1 {
                continue;
            }
            if topes.iter().all(|&t| (t >> e & 1) == (t >> f & 1)) {
                compressed = false;
            }
        }
    }
    let mut complete = true;
    let mut preprincipal = true;
    for i in 0..m {
        let sets: Vec<u64> = (0..m).map(|j| inv(i, j)).collect();
        complete &= is_lattice(&sets);
        let atoms: Vec<u64> = sets
            .iter()
            .copied()
            .filter(|&s| s != 0 && !sets.iter().any(|&t| t != 0 && t != s && is_sub(t, s)))
            .collect();
        for &s in &atoms {
            for &g in &sets {
                if !(is_sub(s, g) || s & g == 0) {
                    preprincipal = false;
                }
            }
        }
    }
    // breadth-first distances with single flips, and with atom steps
    let dist = |edge: &dyn Fn(usize, usize) -> bool, from: usize| {
        let mut d = vec![usize::MAX; m];
        d[from] = 0;
        let mut q = VecDeque::from([from]);
        while let Some(u) = q.pop_front() {
            for v in 0..m {
                if d[v] == usize::MAX && edge(u, v) {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
            }
        }
        d
    };
    let simple = |u: usize, v: usize| inv(u, v).count_ones() == 1;
    let mut principal = true;
    for a in 0..m {
        let d = dist(&simple, a);
        for b in 0..m {
            if d[b] != inv(a, b).count_ones() as usize {
                principal = false;
            }
        }
    }
    let atom = |u: usize, v: usize| {
        let s = inv(u, v);
        s != 0 && !(0..m).any(|w| {
            let t = inv(u, w);
            t != 0 && t != s && is_sub(t, s)
        })
    };
    let atomically_generated = dist(&atom, 0).iter().all(|&x| x != usize::MAX);
    TopeFlags { real: l == 0, compressed, complete, preprincipal, principal, atomically_generated }
}

/// All nonempty families of antipodal pairs of half sets on `n` pairs.
pub fn loopless_families(n: usize) -> Vec<Vec<u64>> {
    let reps: Vec<u64> = (0u64..1 << n)
        .filter(|m| m >> (n - 1) & 1 == 1)
        .map(|m| m | (((1u64 << n) - 1) & !m) << n)
        .collect();
    (1u64..1 << reps.len())
        .map(|mask| {
            let mut t: Vec<u64> = Vec::new();
            for (k, &h) in reps.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    t.push(h);
                    t.push(neg(h, n));
                }
            }
            t.sort_unstable();
            t
        })
        .collect()
}

/// Signed permutations of the pairs applied to a family, minimum sorted image.
pub fn canonical(n: usize, topes: &[u64]) -> Vec<u64> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for i in 0..=k {
                let mut q = p.clone();
                q.insert(i, k);
                next.push(q);
            }
        }
        perms = next;
    }
    let mut best: Option<Vec<u64>> = None;
    for p in &perms {
        for signs in 0u64..1 << n {
            let map = |s: u64| {
                let mut out = 0;
                for i in 0..n {
                    let (pos, negb) = (s >> i & 1, s >> (i + n) & 1);
                    let (a, b) = if signs >> i & 1 == 1 { (negb, pos) } else { (pos, negb) };
                    out |= a << p[i] | b << (p[i] + n);
                }
                out
            };
            let mut img: Vec<u64> = topes.iter().map(|&t| map(t)).collect();
            img.sort_unstable();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap_or_default()
}

/// Order of the group generated by permutations.
pub fn group_order(gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen = vec![id.clone()];
    let mut q = VecDeque::from([id]);
    while let Some(p) = q.pop_front() {
        for g in gens {
            let c: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if !seen.contains(&c) {
                seen.push(c.clone());
                q.push_back(c);
            }
        }
    }
    seen.len()
}

/// Permutation of `roots` induced by the reflection in `roots[k]` for the
/// bilinear form `gram`, in exact integer arithmetic.
pub fn reflection(roots: &[Vec<i64>], gram: &[Vec<i64>], k: usize) -> Vec<usize> {
    let b = |u: &[i64], v: &[i64]| -> i64 {
        (0..u.len()).map(|i| (0..v.len()).map(|j| u[i] * gram[i][j] * v[j]).sum::<i64>()).sum()
    };
    let a = &roots[k];
    let aa = b(a, a);
    roots
        .iter()
        .map(|v| {
            let img: Vec<i64> = v.iter().zip(a).map(|(x, y)| x * aa - 2 * b(a, v) * y).collect();
            roots.iter().position(|r| r.iter().map(|x| x * aa).collect::<Vec<_>>() == img).expect("root list is closed")
        })
        .collect()
}

/// Sets written as signed labels `e1`, `-e2`, ... on the standard ground.
pub fn parse(n: usize, labels: &[&str]) -> u64 {
    labels.iter().fold(0, |acc, l| {
        let (negative, body) = l.strip_prefix('-').map_or((false, *l), |b| (true, b));
        let i: usize = body.trim_start_matches('e').parse::<usize>().unwrap() - 1;
        acc | 1 << if negative { i + n } else { i }
    })
}

pub const VECTOR_FIXTURES: &[(&str, &[&[i64]])] = &[
    ("a1a1", &[&[1, 0], &[0, 1]]),
    ("a2", &[&[1, 0], &[0, 1], &[1, 1]]),
    ("b2", &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]),
    ("nsimp", &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1]]),
];

pub fn vectors(name: &str) -> Vec<Vec<i64>> {
    let (_, v) = VECTOR_FIXTURES.iter().find(|(n, _)| *n == name).expect("vector fixture");
    v.iter().map(|r| r.to_vec()).collect()
}

/// A preacycloid on up to four pairs with some pairs turned into loops.
pub fn arb_preacycloid() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), 0u64..1 << n, any::<u64>())).prop_filter_map("no topes", |(n, loop_mask, pick)| {
        let live: Vec<usize> = (0..n).filter(|i| loop_mask >> i & 1 == 0).collect();
        if live.is_empty() {
            return None;
        }
        let k = live.len();
        let mut topes = Vec::new();
        for m in 0u64..1 << k {
            if m >> (k - 1) & 1 == 1 && pick >> (m as usize % 64) & 1 == 1 {
                for mm in [m, !m & ((1 << k) - 1)] {
                    let mut t = 0;
                    for (j, &i) in live.iter().enumerate() {
                        t |= if mm >> j & 1 == 1 { 1 << i } else { 1 << (i + n) };
                    }
                    topes.push(t);
                }
            }
        }
        (!topes.is_empty()).then_some((n, topes))
    })
}

/// Squares on corners `a -> b -> d` and `a -> c -> d`: for trivial action
/// the condition is just equality of the two flipped sets.
pub fn reference_square(t: &[u64], a: usize, b: usize, c: usize, d: usize) -> bool {
    t[b] & !t[a] == t[d] & !t[c]
}

/// Sources `c'` of every `y'' : c' -> d` above `y : c -> d` admitting a
/// square with `x : b -> d`.
pub fn reference_completions(t: &[u64], b: usize, c: usize, d: usize) -> Vec<usize> {
    let inv = |c: usize| t[d] & !t[c];
    (0..t.len())
        .filter(|&c2| inv(c) & inv(c2) == inv(c) && (0..t.len()).any(|a| reference_square(t, a, b, c2, d)))
        .collect()
}

pub fn least(t: &[u64], d: usize, cands: &[usize]) -> Option<usize> {
    let inv = |c: usize| t[d] & !t[c];
    cands.iter().copied().find(|&c| cands.iter().all(|&o| inv(c) & inv(o) == inv(c)))
}

/// Least common completion of `y : c -> d` against marks with sources `bs`.
pub fn reference_multi(t: &[u64], d: usize, c: usize, bs: &[usize]) -> Option<usize> {
    let mut common: Vec<usize> = (0..t.len()).collect();
    for &b in bs {
        let ok = reference_completions(t, b, c, d);
        common.retain(|k| ok.contains(k));
    }
    least(t, d, &common)
}
