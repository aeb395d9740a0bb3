//! Cross-checks between enumeration, classification, the generating tree and
//! the series catalogue.
//!
//! Each suite runs every one of its checks, collecting a witness for every
//! failure. Reports carry no timing unless asked for, so identical inputs
//! give identical output.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::{
    census, degree_pair, is_ascending, is_descending, is_directed_convex, is_four_stack, is_rectangular, CensusRow,
};
use crate::enumerate::{all_convex, par_fold};
use crate::gentree::{children, construct_levels, count_levels, label_of, parent, succ, Family, GrowthOp, TreeLabel};
use crate::polyomino::Polyomino;
use crate::series::{
    frac, functional_equation_checks, gf, h_formula, kernel_checks, rect_formula, scalar_gf, GfName, IdentityCheck,
    Params, Series,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A finding worth reporting that does not count as a failure.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Polyomino(String),
    Mismatch { n: usize, expected: String, got: String },
    Note(String),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Polyomino(e) => write!(f, "polyomino {e}"),
            Witness::Mismatch { n, expected, got } => write!(f, "n={n}: expected {expected}, got {got}"),
            Witness::Note(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub status: Status,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(description: impl Into<String>) -> Self {
        Check { description: description.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(description: impl Into<String>, witness: Witness) -> Self {
        Check { description: description.into(), status: Status::Fail, witness: Some(witness) }
    }

    pub fn info(description: impl Into<String>, note: impl Into<String>) -> Self {
        Check { description: description.into(), status: Status::Info, witness: Some(Witness::Note(note.into())) }
    }

    /// Passes when `witness` is `None`.
    pub fn from_witness(description: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            None => Check::pass(description),
            Some(w) => Check::fail(description, w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), checks: Vec::new(), elapsed: Duration::ZERO }
    }

    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Human-readable report, one line per check.
    pub fn render_text(&self, with_timing: bool) -> String {
        let mut out = format!("== {} ==\n", self.suite);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            out.push_str(&format!("[{tag}] {}", c.description));
            if let Some(w) = &c.witness {
                out.push_str(&format!(" ({w})"));
            }
            out.push('\n');
        }
        let fails = self.failures().count();
        out.push_str(&format!("{} checks, {} failed", self.checks.len(), fails));
        if with_timing {
            out.push_str(&format!(", {:.3}s", self.elapsed.as_secs_f64()));
        }
        out.push('\n');
        out
    }

    pub fn to_json(&self, with_timing: bool) -> serde_json::Value {
        let mut v = serde_json::json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks,
        });
        if with_timing {
            v["elapsed_seconds"] = serde_json::json!(self.elapsed.as_secs_f64());
        }
        v
    }
}

fn timed(suite: &str, body: impl FnOnce(&mut SuiteReport)) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(suite);
    body(&mut report);
    report.elapsed = start.elapsed();
    report
}

fn mismatch(n: usize, expected: impl Display, got: impl Display) -> Witness {
    Witness::Mismatch { n, expected: expected.to_string(), got: got.to_string() }
}

/// First index where two sequences disagree, starting at `offset`.
fn first_mismatch<A: PartialEq + Display>(offset: usize, expected: &[A], got: &[A]) -> Option<Witness> {
    if expected.len() != got.len() {
        return Some(Witness::Note(format!("lengths differ: {} vs {}", expected.len(), got.len())));
    }
    expected.iter().zip(got).enumerate().find(|(_, (e, g))| e != g).map(|(i, (e, g))| mismatch(offset + i, e, g))
}

fn coefficient(s: &Series, n: usize) -> BigInt {
    let c = s.coeff(n);
    assert!(c.is_integer(), "coefficient {n} is not an integer");
    c.to_integer()
}

fn series(name: GfName, terms: usize) -> Series {
    gf(name, terms, &Params::none()).expect("unparameterized catalogue entry")
}

fn identity_check(check: IdentityCheck) -> Check {
    let witness = check.first_failure.map(|k| Witness::Note(format!("sides differ at t^{k}")));
    Check::from_witness(format!("{} (to order {})", check.name, check.order), witness)
}

/// Tunable bounds for the suites.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Largest size enumerated exhaustively.
    pub max_size: usize,
    /// Largest size grown polyomino by polyomino along the tree.
    pub max_construct: usize,
    /// Largest size reached by the label recursion.
    pub max_labels: usize,
    /// Number of series coefficients for identities between closed forms.
    pub series_terms: usize,
    /// Evaluation point for the refined and functional-equation checks.
    pub params: (BigRational, BigRational, BigRational),
    /// Size at which asymptotic ratios are extrapolated.
    pub asymptotic_n: usize,
    pub fixtures: Option<std::path::PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_size: 12,
            max_construct: 11,
            max_labels: 60,
            series_terms: 301,
            params: (frac(2, 3), frac(3, 5), frac(5, 7)),
            asymptotic_n: 1024,
            fixtures: None,
        }
    }
}

/// The suites that `verify --suite` accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Identities,
    Gentree,
    Refined,
    Structure,
    Kernels,
    Asymptotics,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "all" => Suite::All,
            "identities" => Suite::Identities,
            "gentree" => Suite::Gentree,
            "refined" => Suite::Refined,
            "structure" => Suite::Structure,
            "kernels" => Suite::Kernels,
            "asymptotics" => Suite::Asymptotics,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

/// Runs one suite, or every suite for [`Suite::All`], plus the fixture
/// comparison when a fixture file is configured.
pub fn run(suite: Suite, opts: &VerifyOptions) -> Vec<SuiteReport> {
    let one = |s: Suite| -> SuiteReport {
        match s {
            Suite::Identities => suite_identities(opts.max_size, opts.series_terms),
            Suite::Gentree => suite_gentree(opts.max_construct.min(opts.max_size), opts.max_labels),
            Suite::Refined => suite_refined_gf(opts.max_size.min(11), &opts.params),
            Suite::Structure => suite_structure(opts.max_size),
            Suite::Kernels => suite_kernels(100, 60, &opts.params),
            Suite::Asymptotics => suite_asymptotics(opts.asymptotic_n),
            Suite::All => unreachable!(),
        }
    };
    let mut out = match suite {
        Suite::All => [
            Suite::Identities,
            Suite::Gentree,
            Suite::Refined,
            Suite::Structure,
            Suite::Kernels,
            Suite::Asymptotics,
        ]
        .into_iter()
        .map(one)
        .collect(),
        s => vec![one(s)],
    };
    if let Some(path) = &opts.fixtures {
        out.push(suite_fixtures(path));
    }
    out
}

/// Census rows for sizes `2..=max_n`.
pub fn censuses(max_n: usize) -> Vec<CensusRow> {
    (2..=max_n).map(census).collect()
}

/// Union and partition identities, at enumeration level for sizes up to
/// `min(max_n, 12)` and between closed forms to `series_terms` coefficients.
pub fn suite_identities(max_n: usize, series_terms: usize) -> SuiteReport {
    let rows = censuses(max_n.min(12));
    suite_identities_from(&rows, series_terms)
}

/// [`suite_identities`] on precomputed census rows.
pub fn suite_identities_from(rows: &[CensusRow], series_terms: usize) -> SuiteReport {
    timed("identities", |rep| {
        let max_n = rows.iter().map(|r| r.size).max().unwrap_or(2);
        let terms = series_terms.max(max_n + 1);
        let catalogue: BTreeMap<GfName, Series> = [
            GfName::Cgf,
            GfName::Agf,
            GfName::Lgf,
            GfName::C22gf,
            GfName::C21gf,
            GfName::Zgf,
            GfName::S4gf,
            GfName::Egf,
            GfName::RectGf,
            GfName::Hgf,
        ]
        .into_iter()
        .map(|g| (g, series(g, terms)))
        .collect();

        let big = |v: &BigUint| BigInt::from(v.clone());
        let per_size = |f: &dyn Fn(&CensusRow) -> Option<Witness>| rows.iter().find_map(f);

        rep.push(Check::from_witness(
            "census rows are internally consistent",
            per_size(&|r| r.invariant_violations().first().map(|v| Witness::Note(format!("n={}: {v}", r.size)))),
        ));
        rep.push(Check::from_witness(
            "c(n) = 2a(n) + k(n) - l(n) over the enumeration",
            per_size(&|r| {
                let rhs = big(&r.ascending) * 2 + big(&r.c22) - big(&r.l_convex);
                (big(&r.total_convex) != rhs).then(|| mismatch(r.size, &rhs, &r.total_convex))
            }),
        ));
        rep.push(Check::from_witness(
            "ascending and descending together are exactly the L-convex polyominoes",
            per_size(&|r| {
                (r.ascending_and_descending != r.l_convex)
                    .then(|| mismatch(r.size, &r.l_convex, &r.ascending_and_descending))
            }),
        ));
        rep.push(Check::from_witness(
            "ascending and descending counts agree",
            per_size(&|r| (r.ascending != r.descending).then(|| mismatch(r.size, &r.ascending, &r.descending))),
        ));
        rep.push(Check::from_witness(
            "Z-convex = L-convex + C(1,2) + C(2,1) + C(2,2)",
            per_size(&|r| {
                let sum = &r.l_convex + &r.c12 + &r.c21 + &r.c22;
                (sum != r.z_convex).then(|| mismatch(r.size, &r.z_convex, &sum))
            }),
        ));
        rep.push(Check::from_witness(
            "C(1,2) and C(2,1) have equal counts",
            per_size(&|r| (r.c12 != r.c21).then(|| mismatch(r.size, &r.c21, &r.c12))),
        ));

        let unexpected: Vec<String> = rows
            .iter()
            .flat_map(|r| {
                r.by_degree_pair
                    .iter()
                    .filter(|(&(ne, nw), _)| ne.max(nw) == 2 && ne.min(nw) == 0)
                    .map(move |(&(ne, nw), c)| format!("n={} ({ne},{nw}): {c}", r.size))
            })
            .collect();
        if unexpected.is_empty() {
            rep.push(Check::pass("non-L-convex Z-convex degree pairs are only (1,2), (2,1), (2,2)"));
        } else {
            rep.push(Check::info(
                "non-L-convex Z-convex degree pairs also include (0,2) and (2,0); counted in the C(1,2)/C(2,1) buckets",
                unexpected.join("; "),
            ));
        }

        let against: [(&str, GfName, fn(&CensusRow) -> &BigUint); 10] = [
            ("convex", GfName::Cgf, |r| &r.total_convex),
            ("L-convex", GfName::Lgf, |r| &r.l_convex),
            ("Z-convex", GfName::Zgf, |r| &r.z_convex),
            ("4-stack", GfName::S4gf, |r| &r.four_stack),
            ("centered", GfName::Egf, |r| &r.centered),
            ("ascending", GfName::Agf, |r| &r.ascending),
            ("C(2,2)", GfName::C22gf, |r| &r.c22),
            ("C(2,1)", GfName::C21gf, |r| &r.c21),
            ("C(1,2)", GfName::C21gf, |r| &r.c12),
            ("directed-convex", GfName::RectGf, |r| &r.directed_convex),
        ];
        for (what, g, field) in against {
            let s = &catalogue[&g];
            rep.push(Check::from_witness(
                format!("{what} census matches {g} for n <= {max_n}"),
                per_size(&|r| {
                    let want = coefficient(s, r.size);
                    (want != big(field(r))).then(|| mismatch(r.size, &want, field(r)))
                }),
            ));
        }

        let (c, a, l) = (&catalogue[&GfName::Cgf], &catalogue[&GfName::Agf], &catalogue[&GfName::Lgf]);
        let (c22, c21, z) = (&catalogue[&GfName::C22gf], &catalogue[&GfName::C21gf], &catalogue[&GfName::Zgf]);
        let two = BigRational::from_integer(2.into());
        rep.push(identity_check(IdentityCheck::compare("C = 2A + C22 - L", c, &(&(&a.scale(&two) + c22) - l))));
        rep.push(identity_check(IdentityCheck::compare("Z = 2 C21 + C22 + L", z, &(&(&c21.scale(&two) + c22) + l))));

        let at_one = |g: GfName| {
            let one = BigRational::one();
            gf(g, terms, &Params::xyz(one.clone(), one.clone(), one)).expect("parameters supplied")
        };
        let rect_parts = [GfName::C0p, GfName::L0p, GfName::S0p, GfName::Sp, GfName::Cp, GfName::Lp];
        let scalars = [GfName::S111, GfName::R1, GfName::C1at1, GfName::C111, GfName::L111];
        let mut centered = Series::zero(terms);
        for g in rect_parts {
            centered = &centered + &at_one(g);
        }
        let rect_total = &centered + &at_one(GfName::Np);
        for g in scalars {
            centered = &centered + &scalar_gf(g, terms).expect("scalar");
        }
        let h = &catalogue[&GfName::Hgf];
        rep.push(identity_check(IdentityCheck::compare("H = sum of the centered class series at 1", h, &centered)));
        rep.push(identity_check(IdentityCheck::compare(
            "Rect = sum of the rectangular class series at 1",
            &catalogue[&GfName::RectGf],
            &rect_total,
        )));
        let n1 = scalar_gf(GfName::N1, terms).expect("scalar");
        rep.push(identity_check(IdentityCheck::compare(
            "A = N(1) + N'(1) + H",
            a,
            &(&(&n1 + &at_one(GfName::Np)) + h),
        )));

        rep.push(closed_formula_check(500));

        let mut bad = None;
        for g in GfName::ALL.into_iter().filter(|g| g.counts_objects()) {
            let s = catalogue.get(&g).cloned().unwrap_or_else(|| series(g, terms));
            if let Some((k, c)) = s.coeffs().iter().enumerate().find(|(_, c)| !c.is_integer() || c.is_negative()) {
                bad = Some(Witness::Note(format!("{g} coefficient of t^{k} is {c}")));
                break;
            }
        }
        rep.push(Check::from_witness(
            format!("counting series have non-negative integer coefficients to t^{}", terms - 1),
            bad,
        ));
    })
}

/// `h(n)` and the rectangular count against the H and Rect series, `2 <= n <= max_n`.
pub fn closed_formula_check(max_n: usize) -> Check {
    let h = series(GfName::Hgf, max_n + 1);
    let rect = series(GfName::RectGf, max_n + 1);
    let witness = (2..=max_n).find_map(|n| {
        let (hs, rs) = (coefficient(&h, n), coefficient(&rect, n));
        let (hf, rf) = (BigInt::from(h_formula(n)), BigInt::from(rect_formula(n)));
        if hs != hf {
            Some(mismatch(n, format!("h {hs}"), hf))
        } else if rs != rf {
            Some(mismatch(n, format!("rect {rs}"), rf))
        } else {
            None
        }
    });
    Check::from_witness(format!("h(n) and C(2n-4, n-2) match H and Rect for 2 <= n <= {max_n}"), witness)
}

#[derive(Default)]
struct StructureTally {
    count: BTreeMap<usize, (u64, u64)>,
    mirror: Option<Witness>,
    descending: Option<Witness>,
    prop1: Option<Witness>,
    prop2: Option<Witness>,
    prop4: Option<Witness>,
    flat_second: u64,
}

impl StructureTally {
    fn add(mut self, p: Polyomino) -> Self {
        let d = degree_pair(&p);
        let witness = |slot: &mut Option<Witness>| {
            if slot.is_none() {
                *slot = Some(Witness::Polyomino(p.encode()));
            }
        };
        let m = p.mirror();
        if degree_pair(&m) != d.swapped() {
            witness(&mut self.mirror);
        }
        if is_descending(&p) != is_ascending(&m) {
            witness(&mut self.descending);
        }
        let (hi, lo) = (d.ne.max(d.nw), d.ne.min(d.nw));
        if hi > 2 && lo < hi && lo > 1 {
            witness(&mut self.prop1);
        }
        if lo == 0 && hi >= 2 {
            self.flat_second += 1;
        }
        if d.ne == 2 && d.nw == 2 && !is_four_stack(&p) {
            witness(&mut self.prop2);
        }
        if is_ascending(&p) != (d.nw <= 1) {
            witness(&mut self.prop4);
        }
        let entry = self.count.entry(p.size()).or_default();
        if is_directed_convex(&p) {
            entry.0 += 1;
        }
        if is_ascending(&p) && is_rectangular(&p) {
            entry.1 += 1;
        }
        self
    }

    fn merge(mut self, other: Self) -> Self {
        for (k, (a, b)) in other.count {
            let e = self.count.entry(k).or_default();
            e.0 += a;
            e.1 += b;
        }
        self.mirror = self.mirror.or(other.mirror);
        self.descending = self.descending.or(other.descending);
        self.prop1 = self.prop1.or(other.prop1);
        self.prop2 = self.prop2.or(other.prop2);
        self.prop4 = self.prop4.or(other.prop4);
        self.flat_second += other.flat_second;
        self
    }
}

/// Structural properties over every convex polyomino up to `max_n` (at most 12).
pub fn suite_structure(max_n: usize) -> SuiteReport {
    timed("structure", |rep| {
        let max_n = max_n.min(12);
        let mut tally = StructureTally::default();
        for n in 2..=max_n {
            let part = par_fold(n, StructureTally::default, StructureTally::add, StructureTally::merge);
            tally = tally.merge(part);
        }
        let upto = format!("for n <= {max_n}");
        rep.push(Check::from_witness(format!("mirror swaps the two degrees {upto}"), tally.mirror));
        rep.push(Check::from_witness(format!("descending is ascending after mirroring {upto}"), tally.descending));
        rep.push(Check::from_witness(
            format!("degrees (k, j) with k > 2 and j < k have j <= 1 {upto}"),
            tally.prop1,
        ));
        rep.push(Check::from_witness(format!("every (2,2) polyomino is a 4-stack {upto}"), tally.prop2));
        rep.push(Check::from_witness(format!("ascending iff NW-degree <= 1 {upto}"), tally.prop4));
        rep.push(Check::info(
            format!("polyominoes with one degree 0 and the other at least 2 {upto}"),
            tally.flat_second.to_string(),
        ));
        let mut bad = None;
        for (&n, &(directed, rect)) in &tally.count {
            let want = rect_formula(n);
            if BigUint::from(directed) != want {
                bad = Some(mismatch(n, &want, directed));
                break;
            }
            if directed != rect {
                bad = Some(mismatch(n, directed, rect));
                break;
            }
        }
        rep.push(Check::from_witness(
            format!("rectangular ascending = directed-convex = C(2n-4, n-2) {upto}"),
            bad,
        ));
    })
}

/// Multiset of labels as a sorted count map.
fn label_multiset(labels: impl IntoIterator<Item = TreeLabel>) -> BTreeMap<TreeLabel, u64> {
    let mut m = BTreeMap::new();
    for l in labels {
        *m.entry(l).or_default() += 1;
    }
    m
}

fn to_uint(v: &BigInt) -> BigUint {
    v.to_biguint().expect("non-negative")
}

/// Generating tree checks: growth against enumeration, unique parents,
/// labels against productions, and label counts against the series.
pub fn suite_gentree(max_construct: usize, max_labels: usize) -> SuiteReport {
    timed("gentree", |rep| {
        let max_construct = max_construct.max(2);
        let levels = construct_levels(max_construct);
        let dp = count_levels(max_labels.max(max_construct));
        let terms = dp.len() + 2;
        let (a, h, rect) = (series(GfName::Agf, terms), series(GfName::Hgf, terms), series(GfName::RectGf, terms));

        let printed: [(&str, &[u64]); 3] = [
            ("A", &[1, 2, 7, 26, 101, 404, 1649, 6824, 28498]),
            ("H", &[1, 2, 7, 25, 91, 336, 1254, 4719, 17875]),
            ("Rect", &[1, 2, 6, 20, 70, 252, 924, 3432, 12870]),
        ];
        for (name, want) in printed {
            let got: Vec<u64> = dp
                .iter()
                .take(want.len())
                .map(|l| {
                    let v = match name {
                        "A" => l.total(),
                        "H" => l.centered(),
                        _ => l.rectangular(),
                    };
                    v.to_u64().unwrap_or(u64::MAX)
                })
                .collect();
            rep.push(Check::from_witness(
                format!("label levels reproduce the printed {name} prefix"),
                first_mismatch(2, &want[..got.len()], &got),
            ));
        }

        let mut bij = None;
        let mut uniq = None;
        for (i, level) in levels.iter().enumerate() {
            let n = i + 2;
            let brute: Vec<Polyomino> = {
                let mut v: Vec<Polyomino> = all_convex(n).filter(is_ascending).collect();
                v.sort();
                v
            };
            if bij.is_none() && &brute != level {
                bij = Some(mismatch(n, brute.len(), level.len()));
            }
            if uniq.is_none() {
                if let Some(w) = level.windows(2).find(|w| w[0] == w[1]) {
                    uniq = Some(Witness::Polyomino(w[0].encode()));
                }
            }
        }
        rep.push(Check::from_witness(
            format!("grown levels equal the ascending polyominoes for n <= {max_construct}"),
            bij,
        ));
        rep.push(Check::from_witness(
            format!("no polyomino is grown twice for n <= {max_construct}"),
            uniq,
        ));

        let mut parent_fail = None;
        for level in levels.iter().skip(1) {
            parent_fail = level.iter().find_map(|p| {
                let Ok(Some((op, q))) = parent(p) else {
                    return Some(Witness::Polyomino(p.encode()));
                };
                let hits = children(&q).into_iter().filter(|(o, c)| c == p && *o == op).count();
                (hits != 1).then(|| Witness::Polyomino(p.encode()))
            });
            if parent_fail.is_some() {
                break;
            }
        }
        rep.push(Check::from_witness(
            format!("parent(p) produces p exactly once, 3 <= n <= {max_construct}"),
            parent_fail,
        ));

        let consistency_max = max_construct.min(10);
        let mut consistency = None;
        let mut nc_law = None;
        let mut flipped_law = None;
        'outer: for level in levels.iter().take(consistency_max - 1) {
            for p in level {
                let label = label_of(p).expect("grown polyominoes are ascending");
                if let Err(e) = label.validate() {
                    consistency = Some(Witness::Note(format!("{p}: {e}")));
                    break 'outer;
                }
                let top_full = p.rows().last().is_some_and(|&(l, r)| l == 0 && r == p.width() - 1);
                if label.family.is_flipped() != top_full || (top_full && !(is_rectangular(p) && label.r == 0)) {
                    flipped_law.get_or_insert(Witness::Polyomino(p.encode()));
                }
                let kids = children(p);
                let got = label_multiset(kids.iter().map(|(_, c)| label_of(c).expect("children are ascending")));
                let want = label_multiset(succ(&label).expect("valid label"));
                if got != want {
                    consistency = Some(Witness::Polyomino(p.encode()));
                    break 'outer;
                }
                let r = u64::from(label.r);
                let nc_kids = kids.iter().filter(|(op, _)| matches!(op, GrowthOp::Nc | GrowthOp::NcStar)).count() as u64;
                let expect = match (label.family, label.rect) {
                    (Family::NC, true) => r * (r + 1) / 2 + 1,
                    _ => r * (r + 1) / 2,
                };
                if nc_kids != expect {
                    nc_law.get_or_insert(mismatch(p.size(), expect, nc_kids));
                }
            }
        }
        rep.push(Check::from_witness(
            format!("child labels equal succ(label) for n <= {consistency_max}"),
            consistency,
        ));
        rep.push(Check::from_witness(
            format!("new-column children number r(r+1)/2, plus one for rectangular non-centered, n <= {consistency_max}"),
            nc_law,
        ));
        rep.push(Check::from_witness(
            format!("flipped stacks form C0, L0, S0 and are rectangular with r = 0, n <= {consistency_max}"),
            flipped_law,
        ));

        let mut dp_vs_construct = None;
        for (level, grown) in dp.iter().zip(&levels) {
            let labels = label_multiset(grown.iter().map(|p| label_of(p).expect("ascending")));
            let labels: BTreeMap<TreeLabel, BigUint> = labels.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect();
            if labels != level.counts {
                dp_vs_construct = Some(mismatch(level.level, grown.len(), level.total()));
                break;
            }
        }
        rep.push(Check::from_witness(
            format!("label levels equal the labels of grown levels for n <= {max_construct}"),
            dp_vs_construct,
        ));

        let mut series_fail = None;
        for level in &dp {
            let n = level.level;
            let (an, hn, rn) = (to_uint(&coefficient(&a, n)), to_uint(&coefficient(&h, n)), to_uint(&coefficient(&rect, n)));
            let checks = [
                (an.clone(), level.total(), "total"),
                (hn.clone(), level.centered(), "centered"),
                (an - hn, level.non_centered(), "non-centered"),
                (rn, level.rectangular(), "rectangular"),
            ];
            if let Some((want, got, what)) = checks.into_iter().find(|(w, g, _)| w != g) {
                series_fail = Some(mismatch(n, format!("{what} {want}"), got));
                break;
            }
        }
        let top = dp.last().map_or(2, |l| l.level);
        rep.push(Check::from_witness(
            format!("label level totals match A, H, A - H and Rect for n <= {top}"),
            series_fail,
        ));
    })
}

/// Refined statistics of one evaluation: rectangular classes weighted by
/// `x^b y^w z^r` (only `z^r` for non-centered), others counted.
struct Refined {
    rect: BTreeMap<Family, Vec<BigRational>>,
    plain: BTreeMap<Family, Vec<BigUint>>,
}

fn refined_statistics(max_n: usize, x: &BigRational, y: &BigRational, z: &BigRational) -> Refined {
    let mut rect: BTreeMap<Family, Vec<BigRational>> = BTreeMap::new();
    let mut plain: BTreeMap<Family, Vec<BigUint>> = BTreeMap::new();
    for f in Family::ALL {
        rect.insert(f, vec![BigRational::zero(); max_n + 1]);
        plain.insert(f, vec![BigUint::zero(); max_n + 1]);
    }
    let pow = |v: &BigRational, e: u32| num_traits::pow(v.clone(), e as usize);
    for n in 2..=max_n {
        for p in all_convex(n).filter(is_ascending) {
            let l = label_of(&p).expect("ascending");
            if l.rect {
                let w = if l.family == Family::NC { pow(z, l.r) } else { pow(x, l.b) * pow(y, l.w) * pow(z, l.r) };
                rect.get_mut(&l.family).unwrap()[n] += w;
            } else {
                plain.get_mut(&l.family).unwrap()[n] += 1u32;
            }
        }
    }
    Refined { rect, plain }
}

/// Refined generating functions against statistics collected by brute force.
pub fn suite_refined_gf(max_n: usize, params: &(BigRational, BigRational, BigRational)) -> SuiteReport {
    timed("refined", |rep| {
        let max_n = max_n.clamp(2, 11);
        let (x, y, z) = params;
        let stats = refined_statistics(max_n, x, y, z);
        let point = format!("({x}, {y}, {z})");
        let rect_map = [
            (Family::C0, GfName::C0p),
            (Family::L0, GfName::L0p),
            (Family::S0, GfName::S0p),
            (Family::S, GfName::Sp),
            (Family::C, GfName::Cp),
            (Family::L, GfName::Lp),
            (Family::NC, GfName::Np),
        ];
        for (family, g) in rect_map {
            let s = gf(g, max_n + 1, &Params::xyz(x.clone(), y.clone(), z.clone())).expect("parameters supplied");
            let want = &s.coeffs()[2..];
            let got = &stats.rect[&family][2..];
            rep.push(Check::from_witness(
                format!("rectangular {family} statistic equals {g} at {point}, n <= {max_n}"),
                first_mismatch(2, want, got),
            ));
        }
        for (fams, g) in [
            (&[Family::S][..], GfName::S111),
            (&[Family::R], GfName::R1),
            (&[Family::C1], GfName::C1at1),
            (&[Family::C], GfName::C111),
            (&[Family::L], GfName::L111),
            (&[Family::NC], GfName::N1),
        ] {
            let s = scalar_gf(g, max_n + 1).expect("scalar");
            let want: Vec<BigInt> = (2..=max_n).map(|n| coefficient(&s, n)).collect();
            let got: Vec<BigInt> = (2..=max_n)
                .map(|n| fams.iter().map(|f| BigInt::from(stats.plain[f][n].clone())).sum())
                .collect();
            rep.push(Check::from_witness(
                format!("non-rectangular {} count equals {g}, n <= {max_n}", fams[0]),
                first_mismatch(2, &want, &got),
            ));
        }
        let flipped_plain: BigUint =
            [Family::C0, Family::L0, Family::S0].iter().flat_map(|f| stats.plain[f].iter()).sum();
        rep.push(Check::from_witness(
            "flipped stacks are all rectangular",
            (!flipped_plain.is_zero()).then(|| mismatch(0, 0, &flipped_plain)),
        ));
    })
}

/// Kernel-root identities and the functional equations of the rectangular
/// classes at `params` and at a second fixed point.
pub fn suite_kernels(
    kernel_terms: usize,
    equation_terms: usize,
    params: &(BigRational, BigRational, BigRational),
) -> SuiteReport {
    timed("kernels", |rep| {
        for c in kernel_checks(kernel_terms) {
            rep.push(identity_check(c));
        }
        let points = [params.clone(), (frac(1, 2), frac(1, 3), frac(2, 5))];
        for (x, y, z) in &points {
            match functional_equation_checks(x, y, z, equation_terms) {
                Ok(checks) => {
                    for mut c in checks {
                        c.name = format!("equation {} at ({x}, {y}, {z})", c.name);
                        rep.push(identity_check(c));
                    }
                }
                Err(e) => rep.push(Check::fail(
                    format!("functional equations at ({x}, {y}, {z})"),
                    Witness::Note(e.to_string()),
                )),
            }
        }
    })
}

/// One asymptotic law: `f(n) ~ constant * n^power * 4^n`.
pub struct Law {
    pub name: GfName,
    /// Reciprocal of the constant, exactly, where it is rational.
    pub inverse_constant: BigRational,
    /// Extra floating factor multiplying the normalized ratio.
    pub float_factor: f64,
    /// Power of `n` in the law, as twice the exponent.
    pub twice_power: i32,
    pub tolerance: f64,
}

/// The laws checked by the asymptotics suite.
pub fn laws() -> Vec<Law> {
    let law = |name, num: i64, den: i64, factor: f64, twice_power, tolerance| Law {
        name,
        inverse_constant: frac(num, den),
        float_factor: factor,
        twice_power,
        tolerance,
    };
    let sqrt_pi = std::f64::consts::PI.sqrt();
    vec![
        law(GfName::Agf, 256, 1, 1.0, 2, 0.02),
        law(GfName::C21gf, 768, 1, 1.0, 2, 0.02),
        law(GfName::Zgf, 384, 1, 1.0, 2, 0.02),
        law(GfName::Cgf, 128, 1, 1.0, 2, 0.02),
        law(GfName::Egf, 128, 3, 1.0, 0, 0.02),
        law(GfName::C22gf, 64, 1, sqrt_pi, 1, 0.05),
    ]
}

/// `f(n) / (c n^p 4^n)`, exact up to the final conversion.
fn normalized(s: &Series, law: &Law, n: usize) -> f64 {
    let four_n = BigInt::from(4u32).pow(n as u32);
    let exact = s.coeff(n) * &law.inverse_constant / BigRational::from_integer(four_n);
    let mut v = exact.to_f64().expect("finite ratio") * law.float_factor;
    v /= (n as f64).powf(f64::from(law.twice_power) / 2.0);
    v
}

/// Extrapolated ratio at `n`, removing a correction of order `n^(-1/2)`.
pub fn extrapolate(s: &Series, law: &Law, n: usize) -> (f64, f64) {
    let r = std::f64::consts::SQRT_2;
    let (a, b) = (normalized(s, law, n), normalized(s, law, 2 * n));
    ((r * b - a) / (r - 1.0), a)
}

/// Asymptotic constants, via extrapolated coefficient ratios at `n`.
pub fn suite_asymptotics(n: usize) -> SuiteReport {
    timed("asymptotics", |rep| {
        for law in laws() {
            let s = series(law.name, 2 * n + 1);
            let (value, raw) = extrapolate(&s, &law, n);
            let desc = format!(
                "{} ratio at n={n} extrapolates to {value:.4} (raw {raw:.4}), within {}% of 1",
                law.name,
                law.tolerance * 100.0
            );
            if (value - 1.0).abs() <= law.tolerance {
                rep.push(Check::pass(desc));
            } else {
                rep.push(Check::fail(desc, mismatch(n, "1", format!("{value:.6}"))));
            }
        }
    })
}

/// One user-supplied reference sequence.
#[derive(Debug, Clone, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub gf: String,
    /// Exponent of the first listed term.
    pub offset: usize,
    pub terms: Vec<serde_json::Value>,
}

/// Compares catalogue series with reference prefixes from a JSON file holding
/// a list of [`Fixture`] objects. Terms may be JSON numbers or decimal strings.
pub fn suite_fixtures(path: &Path) -> SuiteReport {
    timed("fixtures", |rep| {
        let parsed = std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|text| serde_json::from_str::<Vec<Fixture>>(&text).map_err(|e| e.to_string()));
        let fixtures = match parsed {
            Ok(f) => f,
            Err(e) => {
                rep.push(Check::fail(format!("read fixtures from {}", path.display()), Witness::Note(e)));
                return;
            }
        };
        for fx in fixtures {
            let desc = format!("{} against {}", fx.id, fx.gf);
            let name = match fx.gf.parse::<GfName>() {
                Ok(g) if g.params().is_empty() => g,
                _ => {
                    rep.push(Check::fail(desc, Witness::Note(format!("unusable series name {:?}", fx.gf))));
                    continue;
                }
            };
            let want: Result<Vec<BigInt>, String> = fx
                .terms
                .iter()
                .map(|v| match v {
                    serde_json::Value::Number(n) => n.to_string().parse::<BigInt>().map_err(|e| e.to_string()),
                    serde_json::Value::String(s) => s.parse::<BigInt>().map_err(|e| e.to_string()),
                    other => Err(format!("bad term {other}")),
                })
                .collect();
            let want = match want {
                Ok(w) => w,
                Err(e) => {
                    rep.push(Check::fail(desc, Witness::Note(e)));
                    continue;
                }
            };
            let s = series(name, fx.offset + want.len());
            let got: Vec<BigInt> = (0..want.len()).map(|i| coefficient(&s, fx.offset + i)).collect();
            rep.push(Check::from_witness(desc, first_mismatch(fx.offset, &want, &got)));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_rendering_is_deterministic() {
        let mut rep = SuiteReport::new("demo");
        rep.push(Check::pass("one"));
        rep.push(Check::fail("two", mismatch(5, 28, 27)));
        rep.push(Check::info("three", "note"));
        rep.elapsed = Duration::from_millis(5);
        let text = rep.render_text(false);
        assert_eq!(
            text,
            "== demo ==\n[PASS] one\n[FAIL] two (n=5: expected 28, got 27)\n[INFO] three (note)\n3 checks, 1 failed\n"
        );
        assert!(!rep.passed());
        let json = rep.to_json(false);
        assert_eq!(json["checks"][1]["status"], "fail");
        assert!(json.get("elapsed_seconds").is_none());
    }

    #[test]
    fn small_identities_pass() {
        let rep = suite_identities(8, 40);
        assert!(rep.passed(), "{}", rep.render_text(false));
    }

    #[test]
    fn small_gentree_pass() {
        let rep = suite_gentree(7, 12);
        assert!(rep.passed(), "{}", rep.render_text(false));
    }

    #[test]
    fn small_structure_and_refined_pass() {
        let rep = suite_structure(8);
        assert!(rep.passed(), "{}", rep.render_text(false));
        let rep = suite_refined_gf(7, &VerifyOptions::default().params);
        assert!(rep.passed(), "{}", rep.render_text(false));
    }

    #[test]
    fn suite_names() {
        assert_eq!("kernels".parse::<Suite>().unwrap(), Suite::Kernels);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fixture_file() {
        let dir = std::env::temp_dir().join(format!("zcx-fixture-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("f.json");
        std::fs::write(
            &path,
            r#"[{"id":"L-prefix","gf":"L","offset":2,"terms":[1,2,7,"24"]},
                {"id":"wrong","gf":"A","offset":2,"terms":[1,2,8]}]"#,
        )
        .unwrap();
        let rep = suite_fixtures(&path);
        assert_eq!(rep.checks[0].status, Status::Pass);
        assert_eq!(rep.checks[1].witness, Some(mismatch(4, 8, 7)));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
