//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always show.

use std::collections::BTreeMap;
use std::process::{Command, Output};
use std::thread;

use ksforms::clifford::{CliffordRep, Sign, Signature};
use ksforms::conesol;
use ksforms::exact::GaussianRational as GR;
use ksforms::suite::{self, Report, Status, SuiteConfig, SuiteName};

const SEED: u64 = 7;
const BIN: &str = env!("CARGO_BIN_EXE_ksforms");

struct Grid {
    /// `(n, eps)` to the full report for signature `(n, 0)`.
    full: BTreeMap<(usize, i8), Report>,
    /// Clifford suite for every split `(n_plus, n_minus)`, both eps.
    clifford: Vec<Report>,
}

fn config(n_plus: usize, n_minus: usize, eps: i8, suites: Vec<SuiteName>) -> SuiteConfig {
    SuiteConfig { n_plus, n_minus, eps, suites, seed: SEED, ..SuiteConfig::default() }
}

fn run_grid() -> Grid {
    let mut jobs = Vec::new();
    for n in 2..=5 {
        for eps in [1i8, -1] {
            jobs.push(((n, eps), config(n, 0, eps, SuiteName::ALL.to_vec())));
        }
    }
    let full = thread::scope(|s| {
        let hs: Vec<_> = jobs.iter().map(|(k, c)| (*k, s.spawn(move || suite::run(c).unwrap()))).collect();
        hs.into_iter().map(|(k, h)| (k, h.join().unwrap())).collect()
    });
    let mut clifford = Vec::new();
    for n in 2..=5 {
        for nm in 0..=n {
            for eps in [1i8, -1] {
                clifford.push(suite::run(&config(n - nm, nm, eps, vec![SuiteName::Clifford])).unwrap());
            }
        }
    }
    Grid { full, clifford }
}

/// Records of one suite, optionally restricted to some keys.
fn records<'a>(r: &'a Report, suite: &str, keys: Option<&[&str]>) -> Vec<&'a suite::Record> {
    let prefix = format!("{suite}/");
    r.records
        .iter()
        .filter(|x| x.name.starts_with(&prefix))
        .filter(|x| keys.is_none_or(|ks| ks.contains(&key_of(&x.name))))
        .collect()
}

fn key_of(name: &str) -> &str {
    name.split('/').nth(1).unwrap_or("")
}

struct Verdict {
    failures: Vec<String>,
    checks: usize,
}

impl Verdict {
    fn new() -> Self {
        Verdict { failures: Vec::new(), checks: 0 }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Every record passes and every required key occurs.
    fn records(&mut self, tag: &str, recs: &[&suite::Record], required: &[&str]) {
        for r in recs {
            self.expect(r.status == Status::Pass && r.residual_is_zero, || format!("{tag}: {}", r.name));
        }
        for k in required {
            self.expect(recs.iter().any(|r| key_of(&r.name) == *k), || format!("{tag}: no {k} records"));
        }
    }
}

fn tag(n: usize, eps: i8) -> String {
    format!("n={n} eps={eps}")
}

fn c1_clifford(g: &Grid) -> Verdict {
    let mut v = Verdict::new();
    for r in &g.clifford {
        let t = format!("({},{}) eps={}", r.config.n_plus, r.config.n_minus, r.config.eps);
        v.records(&t, &records(r, "clifford", None), &["clifford-relation", "f-inverse", "f-intertwining"]);
    }
    v.expect(g.clifford.len() == 2 * (3 + 4 + 5 + 6), || "missing signatures".into());
    v.expect(g.clifford.iter().all(|r| r.config.points >= 3), || "fewer than 3 points".into());
    v
}

const FORM_IDENTITIES: [&str; 6] = ["clf-clifford", "clf-hook", "clv-clifford", "clv-wedge", "clfclv", "rho-form-displays"];

fn c2_identities(g: &Grid) -> Verdict {
    let mut v = Verdict::new();
    v.expect(suite::FORMS_PER_DEGREE >= 50, || "fewer than 50 forms per degree".into());
    for (&(n, eps), r) in &g.full {
        let recs = records(r, "algebra", Some(&FORM_IDENTITIES));
        v.records(&tag(n, eps), &recs, &FORM_IDENTITIES);
        // one record per identity and degree
        v.expect(recs.len() == FORM_IDENTITIES.len() * (n + 1), || format!("{}: {} identity records", tag(n, eps), recs.len()));
    }
    v
}

fn c3_operators(g: &Grid) -> Verdict {
    let mut v = Verdict::new();
    let required = [
        "skew-aff-direction",
        "skew-aff-total",
        "skew-value-direction",
        "skew-value-total",
        "r1-curvature",
        "r2-curvature",
        "r3-curvature",
        "r1-mcurv",
        "r2-mcurv",
        "r3-mcurv",
        "r1-barwedge",
        "r2-barwedge",
        "r3-barwedge",
        "mcurv-pair-part",
    ];
    for (&(n, eps), r) in g.full.iter().filter(|((n, _), _)| *n >= 3) {
        let recs: Vec<_> = records(r, "algebra", None).into_iter().filter(|x| !FORM_IDENTITIES.contains(&key_of(&x.name))).collect();
        v.records(&tag(n, eps), &recs, &required);
        for a in ["1", "2", "i"] {
            let label = format!("/a={a}/");
            v.expect(recs.iter().any(|x| x.name.contains(&label)), || format!("{}: nothing for a={a}", tag(n, eps)));
        }
    }
    v
}

fn c4_solutions(g: &Grid) -> Verdict {
    let mut v = Verdict::new();
    for (&(n, eps), r) in &g.full {
        let t = tag(n, eps);
        let recs = records(r, "solutions", None);
        v.records(&t, &recs, &["killing-yano", "killing-spinor", "sksf-killing", "sksf-special", "32ksf"]);
        for p in 0..=n {
            for s in ["+", "-"] {
                let want = format!("solutions/sksf-killing/p={p}/sign={s}");
                v.expect(recs.iter().any(|x| x.name.starts_with(&want)), || format!("{t}: missing {want}"));
            }
        }
        // Killing numbers squared against ε/4 and 9ε/4; +√ε/2 for the plus sign
        let rep = CliffordRep::build(Signature::new(n, 0, eps).unwrap());
        let e = GR::int(eps.into());
        let root = if eps == 1 { GR::int(1) } else { GR::i() };
        for sign in [Sign::Plus, Sign::Minus] {
            let a = conesol::killing_number(&rep, sign);
            let a3 = conesol::killing_number_32(&rep, sign);
            v.expect(a.clone() * a.clone() == e.clone() * GR::ratio(1, 4), || format!("{t}: a² ≠ ε/4"));
            v.expect(a3.clone() * a3.clone() == e.clone() * GR::ratio(9, 4), || format!("{t}: a′² ≠ 9ε/4"));
            let s = GR::int(sign.value());
            v.expect(a == s.clone() * root.clone() * GR::ratio(1, 2), || format!("{t}: a ≠ ±½√ε"));
            v.expect(a3 == s * root.clone() * GR::ratio(3, 2), || format!("{t}: a′ ≠ ±3/2√ε"));
        }
        // c = ε is what sksf-special tests; it is present for every p
        v.expect(records(r, "solutions", Some(&["sksf-special"])).len() == 2 * (n + 1), || format!("{t}: sksf-special count"));
    }
    v
}

fn c5_tractor(g: &Grid) -> Verdict {
    let mut v = Verdict::new();
    for (&(n, eps), r) in &g.full {
        v.records(&tag(n, eps), &records(r, "tractor", None), &["killing-connection", "tractor-compare", "scalar-curvature", "schouten"]);
        let rep = CliffordRep::build(Signature::new(n, 0, eps).unwrap());
        let a = conesol::killing_number(&rep, Sign::Plus);
        let nn = GR::int((n * (n - 1)) as i64);
        v.expect(nn.clone() * GR::int(4) * a.clone() * a == nn * GR::int(eps.into()), || format!("{}: Scal", tag(n, eps)));
    }
    v
}

fn c6_integrability(g: &Grid) -> Verdict {
    let mut v = Verdict::new();
    for (&(n, eps), r) in &g.full {
        v.records(
            &tag(n, eps),
            &records(r, "integrability", None),
            &["int-first", "int-first-vacuous", "int-second", "int-special-0", "int-special-1", "int-special-2", "int-special-3", "int-special-0-perturbed"],
        );
    }
    v
}

fn c7_nonexistence(g: &Grid) -> Verdict {
    let mut v = Verdict::new();
    for (&(n, eps), r) in g.full.iter().filter(|((n, _), _)| *n >= 3) {
        let t = tag(n, eps);
        let recs = records(r, "nonexistence", None);
        v.records(&t, &recs, &["kernel-first", "kernel-killing-spinor", "kernel-parallel"]);
        let dim = |name: &str| recs.iter().find(|x| x.name == name).and_then(|x| x.dimension);
        for a in ["1", "2", "i", "3/2*sqrt(eps)"] {
            for p in [2, 3] {
                let name = format!("nonexistence/kernel-first/a={a}/p={p}");
                v.expect(dim(&name) == Some(0), || format!("{t}: {name}"));
            }
            let name = format!("nonexistence/kernel-killing-spinor/a={a}");
            v.expect(dim(&name) == Some(0), || format!("{t}: {name}"));
        }
        v.expect(dim("nonexistence/kernel-parallel/p=1") == Some(0), || format!("{t}: kernel-parallel"));
    }
    v
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }
}

/// Expected ranks by record name, from closed-form counts.
fn expected_dimensions(n: usize) -> BTreeMap<String, usize> {
    let s = 1usize << n.div_ceil(2);
    let mut m = BTreeMap::new();
    for p in 0..=n {
        m.insert(format!("dimensions/dim-killing-yano/p={p}"), binom(n + 1, p + 1));
        for sg in ["+", "-"] {
            m.insert(format!("dimensions/dim-sksf/p={p}/sign={sg}"), binom(n + 1, p + 1) * s);
        }
    }
    for sg in ["+", "-"] {
        if (n + 1).is_multiple_of(2) {
            for chi in ["+", "-"] {
                m.insert(format!("dimensions/dim-killing-spinor/p=0/sign={sg}/chirality={chi}"), 1 << (n / 2));
            }
        } else {
            m.insert(format!("dimensions/dim-killing-spinor/p=0/sign={sg}"), 1 << (n / 2));
        }
        // primitive 1-forms: kernel of the surjection clv⨼ onto spinors
        m.insert(format!("dimensions/dim-32ksf/p=1/sign={sg}"), n * s);
        m.insert(format!("dimensions/dim-joint/p=1/sign={sg}"), binom(n + 1, 2) * s + n * s);
    }
    m
}

fn c8_dimensions(g: &Grid) -> Verdict {
    let mut v = Verdict::new();
    for (&(n, eps), r) in &g.full {
        let t = tag(n, eps);
        let recs = records(r, "dimensions", None);
        v.records(&t, &recs, &["dim-killing-yano", "dim-killing-spinor", "dim-sksf", "dim-32ksf", "dim-joint"]);
        let want = expected_dimensions(n);
        v.expect(recs.len() == want.len(), || format!("{t}: {} rows, expected {}", recs.len(), want.len()));
        for (name, d) in want {
            let got = recs.iter().find(|x| x.name == name).and_then(|x| x.dimension);
            v.expect(got == Some(d), || format!("{t}: {name} = {got:?}, expected {d}"));
        }
    }
    // a few values worked out by hand
    let hand = [(2, "dimensions/dim-sksf/p=1/sign=+", 6), (3, "dimensions/dim-sksf/p=1/sign=+", 24), (3, "dimensions/dim-32ksf/p=1/sign=-", 12), (4, "dimensions/dim-killing-yano/p=2", 10)];
    for (n, name, d) in hand {
        v.expect(expected_dimensions(n).get(name) == Some(&d), || format!("hand value {name} at n={n}"));
    }
    v
}

fn c9_correspondence(g: &Grid) -> Verdict {
    let mut v = Verdict::new();
    for (&(n, eps), r) in &g.full {
        v.records(
            &tag(n, eps),
            &records(r, "correspondence", None),
            &["cor32-roundtrip", "cor32-constraint", "cor32-special", "cone-skf", "cone-ks", "cone-sksf", "cone-32ksf"],
        );
    }
    v
}

fn cli(args: &[&str], cap: Option<&str>) -> Output {
    let mut c = Command::new(BIN);
    c.args(args).env_remove("KILLING_SPINOR_CAP");
    if let Some(v) = cap {
        c.env("KILLING_SPINOR_CAP", v);
    }
    c.output().expect("binary runs")
}

fn c10_cli(g: &Grid) -> Verdict {
    let mut v = Verdict::new();
    let args = ["verify", "--n-plus", "3", "--n-minus", "0", "--eps", "1", "--degree", "1", "--suites", "all", "--points", "3", "--seed", "7", "--format", "json"];
    let a = cli(&args, None);
    let b = cli(&args, None);
    v.expect(a.status.code() == Some(0), || format!("verify exit {:?}", a.status.code()));
    v.expect(!a.stdout.is_empty() && a.stdout == b.stdout, || "verify output differs between runs".into());
    match serde_json::from_slice::<Report>(&a.stdout) {
        Ok(r) => {
            v.expect(r.spec_version == "1" && r.failed == 0, || "report header".into());
            v.expect(r.records.iter().any(|x| key_of(&x.name) == "32ksf"), || "no 32ksf checks".into());
        }
        Err(e) => v.expect(false, || format!("report does not parse: {e}")),
    }
    let text = cli(&["verify", "--n-plus", "2", "--suites", "clifford,tractor", "--seed", "7"], None);
    v.expect(text.status.code() == Some(0), || "text verify exit".into());
    let empty = cli(&["verify", "--suites", "", "--format", "json"], None);
    v.expect(empty.status.code() == Some(0), || "empty suite list exit".into());

    let usage: [(&[&str], Option<&str>); 6] = [
        (&["verify", "--n-plus", "1"], None),
        (&["verify", "--degree", "9"], None),
        (&["verify", "--suites", "bogus"], None),
        (&["verify", "--points", "0"], None),
        (&["verify", "--n-plus", "3"], Some("2")),
        (&["dimensions"], Some("many")),
    ];
    for (args, cap) in usage {
        let o = cli(args, cap);
        v.expect(o.status.code() == Some(2), || format!("{args:?} cap={cap:?} exit {:?}", o.status.code()));
    }
    let o = cli(&["explain", "bogus"], None);
    v.expect(o.status.code() == Some(2), || "explain bogus".into());
    let o = cli(&["explain", "clfclv"], None);
    v.expect(o.status.code() == Some(0) && String::from_utf8_lossy(&o.stdout).contains("(2p − n)"), || "explain clfclv".into());

    // a failed check maps to exit 1
    let mut r = g.full[&(2, 1)].clone();
    v.expect(r.exit_code() == 0, || "passing report exit code".into());
    r.records[0].status = Status::Fail;
    r.failed += 1;
    v.expect(r.exit_code() == 1, || "failing report exit code".into());

    // dimensions subcommand against the criterion-8 records
    for (n, eps) in [(3usize, 1i8), (2, -1)] {
        let o = cli(&["dimensions", "--n-plus", &n.to_string(), "--eps", &eps.to_string(), "--seed", "7", "--format", "json"], None);
        v.expect(o.status.code() == Some(0), || format!("dimensions n={n} exit"));
        let Ok(doc) = serde_json::from_slice::<serde_json::Value>(&o.stdout) else {
            v.expect(false, || "dimensions json".into());
            continue;
        };
        let rows = doc["rows"].as_array().cloned().unwrap_or_default();
        let report = &g.full[&(n, eps)];
        v.expect(rows.len() == records(report, "dimensions", None).len(), || format!("dimensions n={n} row count"));
        for row in rows {
            let mut name = format!("dimensions/dim-{}/p={}", row["family"].as_str().unwrap_or(""), row["p"]);
            for field in ["sign", "chirality"] {
                if let Some(s) = row[field].as_str() {
                    name.push_str(&format!("/{field}={s}"));
                }
            }
            let rec = report.records.iter().find(|x| x.name == name).and_then(|x| x.dimension);
            v.expect(row["rank"] == row["bound"] && rec.map(|d| row["rank"] == d) == Some(true), || format!("dimensions row {name}"));
        }
    }
    v
}

type Criterion = fn(&Grid) -> Verdict;

fn main() {
    let grid = run_grid();
    let criteria: [(&str, Criterion); 10] = [
        ("clifford foundation", c1_clifford),
        ("form identities", c2_identities),
        ("operator identities", c3_operators),
        ("solution families", c4_solutions),
        ("prolongation and tractor", c5_tractor),
        ("integrability", c6_integrability),
        ("nonexistence kernels", c7_nonexistence),
        ("dimension tables", c8_dimensions),
        ("correspondence and cone lifts", c9_correspondence),
        ("command line", c10_cli),
    ];
    let mut bad = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f(&grid);
        let ok = v.failures.is_empty() && v.checks > 0;
        println!("criterion {:>2} {:<30} {} ({} checks)", i + 1, name, if ok { "PASS" } else { "FAIL" }, v.checks);
        for msg in v.failures.iter().take(10) {
            println!("    {msg}");
        }
        bad += usize::from(!ok);
    }
    if bad > 0 {
        println!("{bad} criteria failed");
        std::process::exit(1);
    }
}
