//! The end-to-end verification run: build the signed groupoid set of an
//! input, run the property battery and both matroid tests, and cross-check
//! the known equivalences between the two sides.

use serde_json::{json, Value};

use crate::brink_howlett::hypercontract_at;
use crate::error::{Error, Result};
use crate::format::Input;
use crate::ground::RootSet;
use crate::oriented_matroid::{AxiomMode, AxiomReport, OrientedMatroid, SimplicialReport};
use crate::preacycloid::{HandaReport, Preacycloid};
use crate::sgs::{ObjId, PropertyOptions, PropertyReport, Sgs};

/// Properties whose conjunction the main equivalence starts from.
pub const BATTERY: &[&str] = &["faithful", "finite", "connected", "simply_connected", "preprincipal", "complete"];

#[derive(Clone, Copy, Debug, Default)]
pub struct PipelineOptions {
    /// Also contract at every morphism and require the battery again.
    pub hypercontraction_sweep: bool,
}

/// One cross-check between the groupoid side and the matroid side.
#[derive(Clone, Debug)]
pub struct Check {
    pub key: &'static str,
    pub statement: &'static str,
    /// False when the hypotheses do not hold; the check then passes vacuously.
    pub applicable: bool,
    pub holds: bool,
    pub detail: Option<String>,
}

impl Check {
    fn new(key: &'static str, statement: &'static str, applicable: bool, holds: bool) -> Check {
        Check { key, statement, applicable, holds: !applicable || holds, detail: None }
    }

    fn detail(mut self, d: impl Into<String>) -> Check {
        self.detail = Some(d.into());
        self
    }

    fn to_json(&self) -> Value {
        json!({
            "key": self.key,
            "statement": self.statement,
            "applicable": self.applicable,
            "holds": self.holds,
            "detail": self.detail,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerificationVerdict {
    pub input: Value,
    pub sgs: Sgs,
    pub properties: PropertyReport,
    pub acycloid: bool,
    pub matroidal_by_handa: bool,
    pub matroidal_by_axioms: bool,
    /// Decided only for oriented matroids.
    pub simplicial: Option<bool>,
    pub classification: &'static str,
    pub checks: Vec<Check>,
    pub handa: HandaReport,
    pub axioms: AxiomReport,
    pub simplicial_report: Option<SimplicialReport>,
    pub sweep_size: Option<usize>,
}

impl VerificationVerdict {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn inconsistencies(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }

    pub fn check(&self, key: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.key == key)
    }

    pub fn status(&self) -> &'static str {
        if self.consistent() {
            "CONSISTENT"
        } else {
            "INCONSISTENT"
        }
    }

    pub fn to_json(&self) -> Value {
        let ground = self.sgs.ground(ObjId(0));
        json!({
            "input": self.input,
            "classification": self.classification,
            "status": self.status(),
            "properties": self.properties.to_json(&self.sgs),
            "matroid": {
                "acycloid": self.acycloid,
                "matroidal_by_handa": self.matroidal_by_handa,
                "matroidal_by_axioms": self.matroidal_by_axioms,
                "simplicial": self.simplicial,
                "rank": self.simplicial_report.as_ref().map(|s| s.rank),
                "non_simplicial_hemispace": self.simplicial_report.as_ref().and_then(|s| s.witness).map(|h| ground.names(h)),
            },
            "handa": self.handa.to_json(ground),
            "axioms": self.axioms.to_json(ground),
            "hypercontractions_checked": self.sweep_size,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }

    /// Human-readable report.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("verdict: {}\n", self.classification));
        out.push_str(&format!("status: {}\n", self.status()));
        for (k, f) in self.properties.entries() {
            out.push_str(&format!("  {k:<28} {}\n", f.holds));
        }
        out.push_str(&format!("  {:<28} {}\n", "acycloid", self.acycloid));
        out.push_str(&format!("  {:<28} {}\n", "matroidal_by_handa", self.matroidal_by_handa));
        out.push_str(&format!("  {:<28} {}\n", "matroidal_by_axioms", self.matroidal_by_axioms));
        let simp = self.simplicial.map_or("n/a".to_string(), |b| b.to_string());
        out.push_str(&format!("  {:<28} {}\n", "simplicial", simp));
        for c in &self.checks {
            let mark = match (c.applicable, c.holds) {
                (false, _) => "skip",
                (true, true) => "ok",
                (true, false) => "FAIL",
            };
            out.push_str(&format!("  [{mark:<4}] {}: {}", c.key, c.statement));
            if let Some(d) = &c.detail {
                out.push_str(&format!(" ({d})"));
            }
            out.push('\n');
        }
        out
    }
}

fn classify(acycloid: bool, matroidal: bool, a: &Preacycloid, simplicial: Option<bool>) -> &'static str {
    if !acycloid {
        "not an acycloid"
    } else if !matroidal {
        "acycloid, not an oriented matroid"
    } else if !a.is_loopless() {
        "oriented matroid with loops"
    } else if !a.is_simple() {
        "oriented matroid, not simple"
    } else if simplicial == Some(true) {
        "simplicial oriented geometry"
    } else {
        "oriented geometry, not simplicial"
    }
}

/// Runs the full verification on one input.
pub fn main_theorem_pipeline(input: &Input, opts: PipelineOptions) -> Result<VerificationVerdict> {
    let a = input.preacycloid()?;
    let m = input.matroid()?;
    let r = Sgs::from_preacycloid(&a, input.loops_plus())?;
    let rep = r.check_properties_with(PropertyOptions { hereditary: true });
    let p = |k: &str| rep.holds(k);

    let acycloid = a.is_acycloid();
    let handa = a.handa_test();
    let axioms = OrientedMatroid::from_topes(&a).check_matroid_axioms(AxiomMode::Auto)?;
    let matroidal = handa.is_matroidal;
    let simplicial_report = matroidal.then(|| m.simplicial_report());
    let simplicial = simplicial_report.as_ref().map(|s| s.simplicial);
    let geometry = matroidal && a.is_simple() && a.is_loopless();
    let simplicial_geometry = geometry && simplicial == Some(true);

    let mut checks = Vec::new();

    let basic = ["finite", "faithful", "connected", "simply_connected", "antipodal"];
    let missing = rep.failing(&basic);
    let c = Check::new(
        "preacycloid_sgs_basic",
        "the groupoid of a preacycloid is finite, faithful, connected, simply connected and antipodal",
        true,
        missing.is_empty(),
    );
    checks.push(if missing.is_empty() { c } else { c.detail(missing.join(", ")) });

    let back = r.pa_of();
    let round_trip = matches!(&back, Ok(b) if b.key() == a.key());
    checks.push(Check::new("round_trip", "the preacycloid of the groupoid is the input", true, round_trip));

    checks.push(Check::new("real_iff_loopless", "real iff the preacycloid is loopless", true, p("real") == a.is_loopless()));
    checks.push(Check::new(
        "real_compressed_iff_simple",
        "real and compressed iff the preacycloid is simple",
        true,
        (p("real") && p("compressed")) == (a.is_simple() && a.is_loopless()),
    ));
    checks.push(Check::new("preprincipal_iff_acycloid", "preprincipal iff acycloid", true, p("preprincipal") == acycloid));
    checks.push(Check::new(
        "real_principal_iff_simple_acycloid",
        "real and principal iff simple loopless acycloid",
        true,
        (p("real") && p("principal")) == (acycloid && a.is_simple() && a.is_loopless()),
    ));
    checks.push(Check::new(
        "real_principal_iff_geometry",
        "for a tope acycloid: real and principal iff oriented geometry",
        matroidal,
        (p("real") && p("principal")) == geometry,
    ));
    checks.push(Check::new(
        "complete_iff_simplicial",
        "for a tope acycloid: complete iff simplicial",
        matroidal,
        Some(p("complete")) == simplicial,
    ));
    checks.push(Check::new(
        "rootoidal_iff_simplicial",
        "for a tope acycloid: rootoidal iff simplicial",
        matroidal,
        Some(p("rootoidal_jop")) == simplicial,
    ));
    checks.push(Check::new(
        "compression_is_simplification",
        "the real compression corresponds to the simplification",
        acycloid,
        compression_matches(&r, &a),
    ));

    let handa_axioms = matroidal == axioms.passed();
    let c = Check::new("handa_iff_axioms", "the quasicontraction test agrees with the closure axioms", true, handa_axioms);
    checks.push(match axioms.failures.first() {
        Some(f) if !handa_axioms => c.detail(format!("axiom {} fails", f.axiom)),
        _ => c,
    });
    let hereditary = p("hereditarily_preprincipal");
    checks.push(Check::new(
        "handa_iff_hereditarily_preprincipal",
        "oriented matroid iff hereditarily preprincipal",
        true,
        hereditary == matroidal,
    ));
    let characterization = ["faithful", "finite", "connected", "simply_connected", "antipodal"].iter().all(|k| p(k)) && hereditary;
    checks.push(Check::new(
        "tope_acycloid_characterization",
        "oriented matroid iff faithful, finite, connected, simply connected, antipodal and hereditarily preprincipal",
        true,
        characterization == matroidal,
    ));

    let battery = rep.failing(BATTERY).is_empty();
    let c = Check::new(
        "simplicial_gives_battery",
        "a simplicial oriented matroid gives a faithful, finite, connected, simply connected, preprincipal, complete groupoid",
        matroidal && simplicial == Some(true),
        battery,
    );
    checks.push(if battery { c } else { c.detail(rep.failing(BATTERY).join(", ")) });
    checks.push(Check::new(
        "battery_gives_simplicial",
        "the battery forces a simplicial oriented matroid",
        battery,
        matroidal && simplicial == Some(true),
    ));
    let chain = [
        p("real") && p("principal"),
        p("real") && p("compressed"),
        acycloid && a.is_simple() && a.is_loopless(),
        simplicial_geometry,
    ];
    checks.push(
        Check::new(
            "geometry_chain",
            "under the battery: real and principal, real and compressed, simple acycloid and simplicial geometry coincide",
            battery,
            chain.iter().all(|&b| b == chain[0]),
        )
        .detail(format!("{chain:?}")),
    );

    let mut sweep_size = None;
    if opts.hypercontraction_sweep {
        let (count, failure) = if battery { sweep(&r)? } else { (0, None) };
        sweep_size = Some(count);
        let c = Check::new("hypercontractions_inherit", "every hypercontraction satisfies the battery", battery, failure.is_none());
        checks.push(match failure {
            Some(f) => c.detail(f),
            None => c,
        });
    }

    let classification = classify(acycloid, matroidal, &a, simplicial);
    Ok(VerificationVerdict {
        input: input.to_json(),
        sgs: r,
        properties: rep,
        acycloid,
        matroidal_by_handa: matroidal,
        matroidal_by_axioms: axioms.passed(),
        simplicial,
        classification,
        checks,
        handa,
        axioms,
        simplicial_report,
        sweep_size,
    })
}

fn compression_matches(r: &Sgs, a: &Preacycloid) -> bool {
    let simp = a.simplify();
    let Ok(comp) = r.real_compression() else { return false };
    match comp.sgs.pa_of() {
        Ok(pa) => pa.pairs() == simp.preacycloid.pairs() && pa.find_isomorphism(&simp.preacycloid).is_some(),
        Err(_) => false,
    }
}

/// Contracts at every morphism; returns the count and the first failure.
fn sweep(r: &Sgs) -> Result<(usize, Option<String>)> {
    let mut count = 0;
    for g in r.morphism_ids() {
        let h = hypercontract_at(r, g)?;
        count += 1;
        let rep = h.sgs.check_properties();
        let missing = rep.failing(BATTERY);
        if !missing.is_empty() {
            return Ok((count, Some(format!("{}: {}", r.describe(g), missing.join(", ")))));
        }
        let pa = h.sgs.pa_of()?;
        if !pa.handa_test().is_matroidal || !OrientedMatroid::from_topes(&pa).is_simplicial() {
            return Ok((count, Some(format!("{}: not a simplicial tope acycloid", r.describe(g)))));
        }
    }
    Ok((count, None))
}

/// Outcome of comparing the union-of-intersections closure with the tope closure.
#[derive(Clone, Debug)]
pub struct ClosureComparison {
    pub subsets_checked: usize,
    /// `(X, formula, tope closure)` for the first disagreement.
    pub counterexample: Option<(RootSet, RootSet, RootSet)>,
}

impl ClosureComparison {
    pub fn agrees(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Evaluates, for every subset `X` of the roots at the first object, the
/// imaginary roots together with the union over objects `a` of the
/// intersection of all real positive systems containing `X` restricted to
/// the real positives at `a`, all transported to the first object, and compares it
/// with the closure of the matroid whose topes are the real positive systems.
pub fn closure_corollary_check(r: &Sgs) -> Result<ClosureComparison> {
    let rep = r.check_properties();
    let missing = rep.failing(&["faithful", "finite", "connected", "simply_connected", "antipodal", "preprincipal", "rootoidal_jop"]);
    if !missing.is_empty() {
        return Err(Error::PrerequisiteFailed(missing.join(", ")));
    }
    let pa = r.pa_of()?;
    let m = OrientedMatroid::from_topes(&pa);
    let base = ObjId(0);
    let ground = r.ground(base).clone();
    let imaginary = r.imaginary_positive(base) | r.imaginary_positive(base).involute();
    let reals: Vec<RootSet> = pa.topes().to_vec();
    let mut checked = 0;
    for x in ground.full().subsets() {
        checked += 1;
        let mut union = imaginary;
        for &ta in &reals {
            let y = x & ta;
            union = union | reals.iter().filter(|&&tb| y.is_subset(tb)).fold(ground.full(), |acc, &tb| acc & tb);
        }
        let expected = m.closure(x);
        if union != expected {
            return Ok(ClosureComparison { subsets_checked: checked, counterexample: Some((x, union, expected)) });
        }
    }
    Ok(ClosureComparison { subsets_checked: checked, counterexample: None })
}
