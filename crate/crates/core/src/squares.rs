//! Squares `(x, w, y, z)` with `xw = yz` and `x(Φ_w) = Φ_y`, laid out as
//!
//! ```text
//!   a --w--> b
//!   |        |
//!   z        x
//!   v        v
//!   c --y--> d
//! ```
//!
//! and the zig-zag construction of least square completions.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sgs::{MorId, ObjId, Sgs, WeakOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub x: MorId,
    pub w: MorId,
    pub y: MorId,
    pub z: MorId,
}

impl Square {
    pub fn new(x: MorId, w: MorId, y: MorId, z: MorId) -> Square {
        Square { x, w, y, z }
    }

    pub fn as_tuple(&self) -> (MorId, MorId, MorId, MorId) {
        (self.x, self.w, self.y, self.z)
    }
}

/// The three tests for a square, evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareTests {
    pub definition: bool,
    pub orthogonality: bool,
    pub joins: bool,
}

#[derive(Clone, Debug)]
pub struct Zigzag {
    pub result: MorId,
    pub w: MorId,
    pub z: MorId,
    /// `(y_i, w_i)` for every round until the value repeats.
    pub trace: Vec<(MorId, MorId)>,
}

#[derive(Clone, Debug)]
pub struct MultiZigzag {
    pub result: MorId,
    /// `(x_i, w_i, y', z_i)` for every input `x_i`.
    pub squares: Vec<Square>,
    /// Values after each single zig-zag step.
    pub steps: Vec<MorId>,
}

/// All squares of a signed groupoid set, indexed by their right edge.
#[derive(Clone, Debug)]
pub struct SquareInventory {
    pub squares: Vec<Square>,
    by_x: HashMap<MorId, Vec<usize>>,
}

impl SquareInventory {
    pub fn with_right_edge(&self, x: MorId) -> impl Iterator<Item = &Square> {
        self.by_x.get(&x).into_iter().flatten().map(|&i| &self.squares[i])
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }
}

/// Square calculus on a faithful signed groupoid set, with the weak orders
/// precomputed.
pub struct Squares<'a> {
    r: &'a Sgs,
    orders: Vec<WeakOrder>,
    position: Vec<usize>,
    complete: bool,
}

impl<'a> Squares<'a> {
    pub fn new(r: &'a Sgs) -> Result<Squares<'a>> {
        let orders = r.object_ids().map(|a| r.weak_order(a)).collect::<Result<Vec<_>>>()?;
        let mut position = vec![usize::MAX; r.morphism_count()];
        for wo in &orders {
            for (i, m) in wo.elements.iter().enumerate() {
                position[m.0] = i;
            }
        }
        let complete = orders.iter().all(WeakOrder::is_lattice);
        Ok(Squares { r, orders, position, complete })
    }

    pub fn sgs(&self) -> &Sgs {
        self.r
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::NotComplete("some weak order is not a lattice".into()))
        }
    }

    /// Join of morphisms with a common codomain, if it exists.
    pub fn join(&self, ms: &[MorId]) -> Result<Option<MorId>> {
        let Some(&first) = ms.first() else {
            return Err(Error::NotComposable("empty join without an object".into()));
        };
        let a = self.r.target(first);
        if let Some(&m) = ms.iter().find(|&&m| self.r.target(m) != a) {
            return Err(Error::NotComposable(format!("{} is not into {}", self.r.describe(m), self.r.object(a).name)));
        }
        let wo = &self.orders[a.0];
        let idx: Vec<usize> = ms.iter().map(|m| self.position[m.0]).collect();
        Ok(wo.join(&idx).map(|i| wo.elements[i]))
    }

    fn join2(&self, g: MorId, h: MorId) -> Result<Option<MorId>> {
        self.join(&[g, h])
    }

    /// Join at `a` of a possibly empty family.
    pub fn join_at(&self, a: ObjId, ms: &[MorId]) -> Result<Option<MorId>> {
        if ms.is_empty() {
            Ok(Some(self.r.identity(a)))
        } else {
            self.join(ms)
        }
    }

    fn check_shape(&self, s: &Square) -> Result<()> {
        let r = self.r;
        let ok = r.target(s.x) == r.target(s.y)
            && r.source(s.x) == r.target(s.w)
            && r.source(s.y) == r.target(s.z)
            && r.source(s.w) == r.source(s.z);
        if ok {
            Ok(())
        } else {
            Err(Error::NotComposable(format!(
                "({}, {}, {}, {})",
                r.describe(s.x),
                r.describe(s.w),
                r.describe(s.y),
                r.describe(s.z)
            )))
        }
    }

    /// Evaluates the defining condition, the four orthogonality conditions,
    /// and the two join identities.
    pub fn tests(&self, s: &Square) -> Result<SquareTests> {
        self.check_shape(s)?;
        let r = self.r;
        let xw = r.compose(s.x, s.w)?;
        let commutes = xw == r.compose(s.y, s.z)?;
        let inv = |m| r.inversion(m);
        let (xi, yi, zi, wi) = (r.inverse(s.x), r.inverse(s.y), r.inverse(s.z), r.inverse(s.w));
        let definition = commutes && r.apply(s.x, inv(s.w)) == inv(s.y);
        let orthogonality = commutes
            && inv(xi).is_disjoint(inv(s.w))
            && inv(s.x).is_disjoint(inv(s.y))
            && inv(s.z).is_disjoint(inv(yi))
            && inv(zi).is_disjoint(inv(wi));
        let joins = commutes
            && self.join2(s.x, s.y)? == Some(xw)
            && self.join2(xi, s.w)? == Some(r.compose(xi, s.y)?);
        Ok(SquareTests { definition, orthogonality, joins })
    }

    /// True iff `s` is a square; the three characterizations must agree.
    pub fn is_square(&self, s: &Square) -> Result<bool> {
        let t = self.tests(s)?;
        if t.definition != t.orthogonality || t.definition != t.joins {
            return Err(Error::Inconsistent(format!("square tests disagree: {t:?}")));
        }
        Ok(t.definition)
    }

    /// The orbit under `(x,w,y,z) -> (y,z,x,w)` and `(x,w,y,z) -> (w,z⁻¹,x⁻¹,y)`.
    pub fn orbit(&self, s: &Square) -> Vec<Square> {
        let r = self.r;
        let mut out = vec![*s];
        let mut k = 0;
        while k < out.len() {
            let q = out[k];
            for next in [Square::new(q.y, q.z, q.x, q.w), Square::new(q.w, r.inverse(q.z), r.inverse(q.x), q.y)] {
                if !out.contains(&next) {
                    out.push(next);
                }
            }
            k += 1;
        }
        out
    }

    /// Pastes `(x, w, y, z)` and `(x', w', y', x)` along `x` into
    /// `(x', w'w, y'y, z)`.
    pub fn compose(&self, first: &Square, second: &Square) -> Result<Square> {
        if second.z != first.x {
            return Err(Error::EdgeMismatch(format!(
                "{} is not {}",
                self.r.describe(second.z),
                self.r.describe(first.x)
            )));
        }
        let r = self.r;
        Ok(Square::new(second.x, r.compose(second.w, first.w)?, r.compose(second.y, first.y)?, first.z))
    }

    /// Square status of the first, second and pasted squares.
    pub fn two_of_three(&self, first: &Square, second: &Square) -> Result<[bool; 3]> {
        let pasted = self.compose(first, second)?;
        Ok([self.is_square(first)?, self.is_square(second)?, self.is_square(&pasted)?])
    }

    /// The square `(x, ⋁w_i, ⋁y_i, z)` over a family sharing the right edge `x`.
    pub fn join_squares(&self, x: MorId, family: &[Square]) -> Result<Square> {
        self.require_complete()?;
        let r = self.r;
        if let Some(s) = family.iter().find(|s| s.x != x) {
            return Err(Error::EdgeMismatch(format!("{} is not {}", r.describe(s.x), r.describe(x))));
        }
        let ws: Vec<MorId> = family.iter().map(|s| s.w).collect();
        let ys: Vec<MorId> = family.iter().map(|s| s.y).collect();
        let missing = || Error::MissingJoin("join of a family".into());
        let w = self.join_at(r.source(x), &ws)?.ok_or_else(missing)?;
        let y = self.join_at(r.target(x), &ys)?.ok_or_else(missing)?;
        let xw = r.compose(x, w)?;
        let z = r.compose(r.inverse(y), xw)?;
        let sq = Square::new(x, w, y, z);
        if !self.is_square(&sq)? {
            return Err(Error::Inconsistent("the join of squares is not a square".into()));
        }
        if !family.is_empty() {
            let xws = family.iter().map(|s| r.compose(x, s.w)).collect::<Result<Vec<_>>>()?;
            if self.join(&xws)? != Some(xw) {
                return Err(Error::Inconsistent("xw is not the join of the xw_i".into()));
            }
        }
        Ok(sq)
    }

    fn check_orthogonal(&self, x: MorId, y: MorId, index: usize) -> Result<()> {
        let r = self.r;
        if r.target(x) != r.target(y) {
            return Err(Error::NotComposable(format!("{} and {} have different codomains", r.describe(x), r.describe(y))));
        }
        if !r.orthogonal(x, y) {
            return Err(Error::NotOrthogonal { index });
        }
        Ok(())
    }

    /// Least `y' ≥ y` completing a square `(x, w', y', z')`, by alternating
    /// `x ∨ y_i = x w_i` and `x⁻¹ ∨ w_i = x⁻¹ y_{i+1}`.
    pub fn zigzag(&self, y: MorId, x: MorId) -> Result<Zigzag> {
        self.require_complete()?;
        self.check_orthogonal(x, y, 0)?;
        let r = self.r;
        let xi = r.inverse(x);
        let missing = || Error::MissingJoin("zig-zag step".into());
        let mut cur = y;
        let mut trace = Vec::new();
        let bound = r.morphisms_into(r.target(x)).len() + 1;
        for _ in 0..bound {
            let w = r.compose(xi, self.join2(x, cur)?.ok_or_else(missing)?)?;
            trace.push((cur, w));
            let next = r.compose(x, self.join2(xi, w)?.ok_or_else(missing)?)?;
            if next == cur {
                let z = r.compose(r.inverse(cur), r.compose(x, w)?)?;
                return Ok(Zigzag { result: cur, w, z, trace });
            }
            cur = next;
        }
        Err(Error::Inconsistent("zig-zag did not stabilize".into()))
    }

    /// Least `y' ≥ y` completing squares with every `x_i` at once, applying
    /// single zig-zags round-robin until a full round changes nothing.
    pub fn multi_zigzag(&self, y: MorId, xs: &[MorId]) -> Result<MultiZigzag> {
        self.require_complete()?;
        for (i, &x) in xs.iter().enumerate() {
            self.check_orthogonal(x, y, i)?;
        }
        let r = self.r;
        let mut cur = y;
        let mut steps = Vec::new();
        if !xs.is_empty() {
            let mut unchanged = 0;
            let mut i = 0;
            let bound = (r.morphisms_into(r.target(y)).len() + 1) * xs.len();
            while unchanged < xs.len() {
                if steps.len() > bound {
                    return Err(Error::Inconsistent("simultaneous zig-zag did not stabilize".into()));
                }
                let next = self.zigzag(cur, xs[i % xs.len()])?.result;
                steps.push(next);
                if next == cur {
                    unchanged += 1;
                } else {
                    unchanged = 1;
                    cur = next;
                }
                i += 1;
            }
        }
        let mut squares = Vec::with_capacity(xs.len());
        for &x in xs {
            let top = self.join2(x, cur)?.ok_or_else(|| Error::MissingJoin("final square".into()))?;
            let w = r.compose(r.inverse(x), top)?;
            let z = r.compose(r.inverse(cur), top)?;
            squares.push(Square::new(x, w, cur, z));
        }
        Ok(MultiZigzag { result: cur, squares, steps })
    }

    /// Every `y'' ≥ y` into the codomain of `x` admitting a square with `x`.
    pub fn completions(&self, y: MorId, x: MorId) -> Result<Vec<MorId>> {
        let r = self.r;
        let b = r.source(x);
        let mut out = Vec::new();
        for cand in r.morphisms_into(r.target(x)) {
            if !r.leq(y, cand) {
                continue;
            }
            let mut fits = false;
            for w in r.morphisms_into(b) {
                let z = r.compose(r.inverse(cand), r.compose(x, w)?)?;
                if self.is_square(&Square::new(x, w, cand, z))? {
                    fits = true;
                    break;
                }
            }
            if fits {
                out.push(cand);
            }
        }
        Ok(out)
    }

    /// Checks both sides of `□_{yu}(x_1..x_p) = y □_u(z_1..z_p)`, where the
    /// `z_i` are the left edges of the squares completing `y`.
    pub fn check_composition(&self, y: MorId, u: MorId, xs: &[MorId]) -> Result<bool> {
        let r = self.r;
        let yu = r.compose(y, u)?;
        let fail = |s: &str| Err(Error::HypothesisFailed(s.to_string()));
        let base = self.multi_zigzag(y, xs)?;
        if base.result != y {
            return fail("y is not its own simultaneous completion");
        }
        if !r.leq(y, yu) {
            return fail("y is not below yu");
        }
        if xs.iter().any(|&x| !r.orthogonal(x, yu)) {
            return fail("some x_i is not orthogonal to yu");
        }
        let zs: Vec<MorId> = base.squares.iter().map(|s| s.z).collect();
        let left = self.multi_zigzag(yu, xs)?.result;
        let right = r.compose(y, self.multi_zigzag(u, &zs)?.result)?;
        Ok(left == right)
    }

    /// All squares, found by pairing factorizations of every morphism.
    pub fn inventory(&self) -> Result<SquareInventory> {
        let r = self.r;
        let mut squares = Vec::new();
        for k in r.morphism_ids() {
            let a = r.source(k);
            let mut facts = Vec::new();
            for b in r.object_ids() {
                for w in r.hom(b, a) {
                    facts.push((r.compose(k, r.inverse(w))?, w));
                }
            }
            for &(x, w) in &facts {
                for &(y, z) in &facts {
                    let s = Square::new(x, w, y, z);
                    if self.is_square(&s)? {
                        squares.push(s);
                    }
                }
            }
        }
        squares.sort_unstable();
        let mut by_x: HashMap<MorId, Vec<usize>> = HashMap::new();
        for (i, s) in squares.iter().enumerate() {
            by_x.entry(s.x).or_default().push(i);
        }
        Ok(SquareInventory { squares, by_x })
    }

    /// The square `(x, x⁻¹ω_d, x⊥, (x⊥)⁻¹ω_d)` for `x` into `d`.
    pub fn antipodal_square(&self, x: MorId) -> Result<Square> {
        let r = self.r;
        let omega = r.antipode(r.target(x))?;
        let perp = r.orthocomplement(x)?;
        Ok(Square::new(
            x,
            r.compose(r.inverse(x), omega)?,
            perp,
            r.compose(r.inverse(perp), omega)?,
        ))
    }
}
