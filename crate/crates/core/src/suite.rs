//! Batch verification runner behind the command line tool.
//!
//! Every suite draws its random data from its own ChaCha8 stream
//! (`seed_from_u64(seed)` with the stream set to the suite's index), so a
//! suite's results do not depend on which other suites are selected.

use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordRep, Sign, Signature};
use crate::conesol::{self, ConeData};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational};
use crate::identities::{self, Named};
use crate::killing::{self, jet, KernelConditions, Residual};
use crate::modelspace::{sample_point, PolySection, QuadricPoint, TangentFrame};
use crate::svforms::random::{random_form, random_vector, try_skewed_frame};
use crate::svforms::{Frame, ModelCurvature, SVForm};

type GR = GaussianRational;

pub const SPEC_VERSION: &str = "1";
pub const DEFAULT_SPINOR_CAP: usize = 16;
/// Random forms per degree in the algebra suite.
pub const FORMS_PER_DEGREE: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Algebra,
    Clifford,
    Solutions,
    Integrability,
    Dimensions,
    Nonexistence,
    Tractor,
    Correspondence,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::Algebra,
        SuiteName::Clifford,
        SuiteName::Solutions,
        SuiteName::Integrability,
        SuiteName::Dimensions,
        SuiteName::Nonexistence,
        SuiteName::Tractor,
        SuiteName::Correspondence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Algebra => "algebra",
            SuiteName::Clifford => "clifford",
            SuiteName::Solutions => "solutions",
            SuiteName::Integrability => "integrability",
            SuiteName::Dimensions => "dimensions",
            SuiteName::Nonexistence => "nonexistence",
            SuiteName::Tractor => "tractor",
            SuiteName::Correspondence => "correspondence",
        }
    }

    fn stream(self) -> u64 {
        SuiteName::ALL.iter().position(|s| *s == self).expect("listed") as u64
    }

    /// Parses a comma separated list; `all` selects every suite and the
    /// empty string selects none.
    pub fn parse_list(s: &str) -> Result<Vec<SuiteName>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(SuiteName::ALL);
                continue;
            }
            let name = SuiteName::ALL
                .into_iter()
                .find(|n| n.as_str() == part)
                .ok_or_else(|| Error::Usage(format!("unknown suite '{part}'")))?;
            out.push(name);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub n_plus: usize,
    pub n_minus: usize,
    pub eps: i8,
    /// Form degrees to check; empty means every valid degree `0..=n`.
    pub degrees: Vec<usize>,
    pub suites: Vec<SuiteName>,
    pub points: usize,
    pub seed: u64,
    pub format: Format,
    pub timings: bool,
    pub spinor_cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_plus: 3,
            n_minus: 0,
            eps: 1,
            degrees: Vec::new(),
            suites: SuiteName::ALL.to_vec(),
            points: 3,
            seed: 0,
            format: Format::Text,
            timings: false,
            spinor_cap: DEFAULT_SPINOR_CAP,
        }
    }
}

impl SuiteConfig {
    pub fn signature(&self) -> Result<Signature> {
        let sig = Signature::new(self.n_plus, self.n_minus, self.eps).map_err(|e| Error::Usage(e.to_string()))?;
        if sig.spinor_dim() > self.spinor_cap {
            return Err(Error::Usage(format!(
                "spinor dimension {} exceeds the cap {}",
                sig.spinor_dim(),
                self.spinor_cap
            )));
        }
        Ok(sig)
    }

    /// The degrees to check, validated against `n`.
    pub fn degree_list(&self) -> Result<Vec<usize>> {
        let n = self.signature()?.n();
        if self.degrees.is_empty() {
            return Ok((0..=n).collect());
        }
        let mut d = self.degrees.clone();
        if let Some(bad) = d.iter().find(|&&p| p > n) {
            return Err(Error::Usage(format!("degree {bad} exceeds n = {n}")));
        }
        d.sort_unstable();
        d.dedup();
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        self.signature()?;
        self.degree_list()?;
        if self.points == 0 {
            return Err(Error::Usage("at least one sample point is needed".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub residual_is_zero: bool,
    pub dimension: Option<usize>,
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub spec_version: String,
    pub config: SuiteConfig,
    pub records: Vec<Record>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    /// Process exit code: 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        u8::from(!self.all_pass())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let dim = r.dimension.map(|d| format!("  dim={d}")).unwrap_or_default();
            let t = r.elapsed_ms.map(|t| format!("  {t}ms")).unwrap_or_default();
            let st = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            s.push_str(&format!("{st}  {}{dim}{t}\n", r.name));
        }
        s.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        s
    }
}

/// Check catalog: key, anchor, formula.
pub const CATALOG: &[(&str, &str, &str)] = &[
    ("clifford-relation", "Clifford relation of the gamma matrices", "γᵢγⱼ + γⱼγᵢ = −2ḡᵢⱼ"),
    ("f-inverse", "cone spinor maps are inverse up to a factor", "f± ∘ f∓ = 2"),
    ("f-intertwining", "cone spinor maps intertwine Clifford multiplication", "F±(X·Ψ) = ∓√ε x·X·F±(Ψ)"),
    ("chirality", "half-spinor splitting", "ω² = 1, ωγᵢ = −γᵢω"),
    ("clf-clifford", "clf identity with Clifford multiplication", "X·(clf∧Φ) + clf∧(X·Φ) = −2X♭∧Φ"),
    ("clf-hook", "clf identity with contraction", "X⨼(clf∧Φ) + clf∧(X⨼Φ) = X·Φ"),
    ("clv-clifford", "clv identity with Clifford multiplication", "X·(clv⨼Φ) + clv⨼(X·Φ) = −2X⨼Φ"),
    ("clv-wedge", "clv identity with wedge", "X♭∧(clv⨼Φ) + clv⨼(X♭∧Φ) = X·Φ"),
    ("clfclv", "clf/clv commutator, (2p − n)Φ identity", "clv⨼(clf∧Φ) − clf∧(clv⨼Φ) = (2p − n)Φ"),
    ("rho-form-displays", "two displays of the orthogonal action on forms", "X⨼(Y♭∧Φ) − Y⨼(X♭∧Φ) = X♭∧(Y⨼Φ) − Y♭∧(X⨼Φ)"),
    ("skew-aff-direction", "skew action of the form curvature", "R^aff_X∧Φ = −εp X♭∧Φ"),
    ("skew-aff-total", "total skew action of the form curvature", "R^aff∧Φ = 0"),
    ("skew-value-direction", "skew action of the value curvature", "R^V_X∧Φ = −½(ε−4a²)(X·(clf∧Φ) + X♭∧Φ)"),
    ("skew-value-total", "total skew action of the value curvature", "R^V∧Φ = −¼(ε−4a²) clf∧clf∧Φ"),
    ("aff-pair-part", "form curvature has no (p,2) component", "(R^aff Φ)^(p,2) = 0"),
    ("value-pair-part", "(p,2) component of the value curvature", "(R^V Φ)^(p,2) = −½(ε−4a²)((X·Y·+g(X,Y))Φ − (1/p)(Y⨼S_X − X⨼S_Y − 1/(p+1) Y⨼X⨼(clf∧clf∧Φ)))"),
    ("r1-curvature", "clv ⨼ (clv ⨼ Φ) operator identity", "r₁((RΦ)^(p,2)) = −½(ε−4a²) clv⨼(clv⨼Φ)"),
    ("r2-curvature", "clv ⨼ Φ operator identity", "r₂((RΦ)^(p,2)) = (ε−4a²)/(2p) ((n+2)(p−1) clv⨼Φ + clf∧(clv⨼(clv⨼Φ)))"),
    ("r2-curvature-expanded", "clv ⨼ Φ operator identity before rearranging", "r₂((RΦ)^(p,2)) = (ε−4a²)/(2p) ((np+n−2p) clv⨼Φ + clv⨼(clv⨼(clf∧Φ)))"),
    ("r3-curvature", "Clifford-Clifford contraction of the (p,2) component", "r₃((RΦ)^(p,2)) = (ε−4a²)/(2(p+1)) ((n+1)(n+2)(p−1)Φ + (1/p)(2(n+2)(p−1) clf∧(clv⨼Φ) + clf∧clf∧(clv⨼(clv⨼Φ))))"),
    ("r3-curvature-expanded", "Clifford-Clifford contraction before rearranging", "r₃((RΦ)^(p,2)) = (ε−4a²)/(2p) (n(np−p−1)Φ − clf∧(clv⨼Φ) + (2n−3) clv⨼(clf∧Φ) + 1/(p+1) clv⨼(clv⨼(clf∧clf∧Φ)))"),
    ("r3-curvature-spinor", "Clifford-Clifford contraction on spinors", "r₃(RΨ) = ½(ε−4a²) n(n−1) Ψ"),
    ("mcurv-pair-part", "(2,2) component of the modified curvature on 2-forms", "(mcurv Ξ′)^(2,2) = 3 (R^V Ξ′)^(2,2)"),
    ("r1-mcurv", "r₁ of the modified curvature", "r₁((mcurv Ξ′)^(2,2)) = −3/2 (ε−4a²) clv⨼(clv⨼Ξ′)"),
    ("r1-barwedge", "r₁ of the derivative curvature term", "r₁((∇R)⊼Φ′) = −2a(ε−4a²)(n−1) clv⨼Φ′"),
    ("r2-mcurv", "r₂ of the modified curvature", "r₂((mcurv Ξ′)^(2,2)) = ¾(ε−4a²)((n+2) clv⨼Ξ′ + clf∧(clv⨼(clv⨼Ξ′)))"),
    ("r2-barwedge", "r₂ of the derivative curvature term", "r₂((∇R)⊼Φ′) = ½a(ε−4a²)((n−2)(n+2)Φ′ + (n−4) clf∧(clv⨼Φ′))"),
    ("r2-barwedge-expanded", "r₂ of the derivative curvature term before rearranging", "r₂((∇R)⊼Φ′) = a(ε−4a²)(n(n−2)Φ′ − clf∧(clv⨼Φ′) + ½(n−2) clv⨼(clf∧Φ′))"),
    ("r3-mcurv", "r₃ of the modified curvature", "r₃((mcurv Ξ′)^(2,2)) = ½(ε−4a²)((n+1)(n+2)Ξ′ + (n+2) clf∧(clv⨼Ξ′) + ½ clf∧clf∧(clv⨼(clv⨼Ξ′)))"),
    ("r3-barwedge", "r₃ of the derivative curvature term", "r₃((∇R)⊼Φ′) = −a(ε−4a²)((n+2) clf∧Φ′ + clf∧clf∧(clv⨼Φ′))"),
    ("r3-barwedge-expanded", "r₃ of the derivative curvature term before rearranging", "r₃((∇R)⊼Φ′) = −½a(ε−4a²)((5n−4) clf∧Φ′ + clf∧(clv⨼(clf∧Φ′)) + clv⨼(clf∧clf∧Φ′))"),
    ("r2-levi-civita", "r₂ of the Levi-Civita curvature on 1-forms", "r₂(R^g Φ) = −½ε(n−1) clv⨼Φ"),
    ("casimir-levi-civita", "curved Casimir of the Levi-Civita curvature on 1-forms", "q(R^g Φ) = ε(−(n−½)Φ − ½ clf∧(clv⨼Φ))"),
    ("killing-yano", "Killing-Yano forms from constant ambient forms", "α = x⨼θ̄, β = θ̄ − dr∧(x⨼θ̄): ∇_Xα = X⨼β"),
    ("killing-yano-special", "Killing-Yano forms are special with c = ε", "∇_Xβ = −εX♭∧α"),
    ("killing-spinor", "Killing spinors from constant ambient spinors", "Ψ = ½(1 ± √ε x)·Ψ̄: ∇_XΨ = ±½√ε X·Ψ"),
    ("sksf-killing", "Killing spinor-valued forms from constant ambient forms", "∇_XΦ = aX·Φ + X⨼Ξ, a = ±½√ε"),
    ("sksf-special", "Killing constant of the cone families", "∇_XΞ = aX·Ξ − εX♭∧Φ"),
    ("xi-from-phi", "companion form from the exterior derivative", "Ξ = 1/(p+1)(d^gΦ − a clf∧Φ)"),
    ("ksf-substituted", "Killing equation with the companion form eliminated", "∇_XΦ = a(X·Φ − 1/(p+1) X⨼(clf∧Φ)) + 1/(p+1) X⨼d^gΦ"),
    ("star-killing", "companion forms are star-Killing", "∇^a_XΞ = X♭∧Φ̃ with Φ̃ = −cΦ"),
    ("32ksf", "additional Killing spinor-valued 1-forms", "∇_XΦ′ = a′(X·Φ′ − ⅔X⨼(clf∧Φ′)), a′ = ±3/2√ε"),
    ("32ksf-killing", "additional solutions are Killing", "∇_XΦ′ = a′X·Φ′ + X⨼Ξ′, Ξ′ = −⅔a′ clf∧Φ′"),
    ("killing-connection", "prolonged solutions are parallel for the Killing connection", "∇Φ − X⨼Ξ = 0, ∇Ξ − (1/p)(R_X∧Φ − 1/(p+1) X⨼(R∧Φ)) = 0"),
    ("tractor-compare", "Killing connection equals the corrected tractor connection", "K = ∇^tr − (1/p)(0, R^V_X∧Φ − 1/(p+1) X⨼(R^V∧Φ))"),
    ("schouten", "projective Schouten tensor of the model space", "Rho = Ric/(n−1) = εg"),
    ("scalar-curvature", "scalar curvature and Killing number", "Scal = n(n−1)ε = 4n(n−1)a², a = ±½√ε"),
    ("int-first", "first integrability condition", "(RΦ)^(p,2) = 0"),
    ("int-first-vacuous", "first integrability condition is empty in degree 1", "(RΦ)^(1,2) ≡ 0"),
    ("int-second", "second integrability condition", "(mcurv Ξ)^(p+1,2) = ((∇R)⊼Φ)"),
    ("int-special-0", "curvature characterization of special Killing forms", "R_{X,Y}Φ = cρ^aff(X∧Y)Φ"),
    ("int-special-1", "curvature on the companion form", "R_{X,Y}Ξ = cρ^aff(X∧Y)Ξ"),
    ("int-special-2", "derivative of curvature on Φ", "(∇_X R)_{Y,Z}Φ = −((R^g_{Y,Z} − cρ(Y∧Z))X)⨼Ξ"),
    ("int-special-3", "derivative of curvature on Ξ", "(∇_X R)_{Y,Z}Ξ = c((R^g_{Y,Z} − cρ(Y∧Z))X)♭∧Φ"),
    ("int-special-0-perturbed", "the curvature characterization fails for the wrong constant", "R_{X,Y}Φ ≠ (c+1)ρ^aff(X∧Y)Φ"),
    ("kernel-first", "no Killing spinor-valued p-forms for p ≥ 2 and other Killing numbers", "dim ker (Φ ↦ (RΦ)^(p,2)) = 0"),
    ("kernel-killing-spinor", "Killing numbers of Killing spinors", "dim ker (Ψ ↦ R_{X,Y}Ψ) = 0 for a ≠ ±½√ε"),
    ("kernel-killing-spinor-critical", "curvature vanishes on spinors at the critical Killing numbers", "dim ker (Ψ ↦ R_{X,Y}Ψ) = rank Σ for a = ±½√ε"),
    ("kernel-parallel", "no parallel spinor-valued 1-forms", "dim ker (Φ ↦ R^g_{X,Y}Φ) = 0"),
    ("kernel-second-graph", "pointwise solutions of both conditions in degree 1 have Ξ′ = −⅔a′clf∧Φ′", "ker(int₁, int₂) = ker on the graph Ξ′ = −⅔a′ clf∧Φ′"),
    ("dim-killing-yano", "maximal dimension with scalar values", "rank = C(n+1, p+1)"),
    ("dim-killing-spinor", "maximal dimension of Killing spinors", "rank = 2^⌊n/2⌋"),
    ("dim-sksf", "maximal dimension of Killing spinor-valued forms", "rank = C(n+1, p+1)·2^⌊(n+1)/2⌋"),
    ("dim-32ksf", "additional solutions match primitive forms", "rank = rank π̄^Tw"),
    ("dim-joint", "additional solutions are new", "rank(ksf ⊕ 32ksf) = rank ksf + rank 32ksf"),
    ("cor32-roundtrip", "degree-one correspondence is bijective", "Φ′ ↦ (Φ, Ξ) ↦ Φ′ and back"),
    ("cor32-constraint", "primitivity constraint of the correspondence", "clv⨼Ξ = −2aΦ"),
    ("cor32-special", "correspondence lands on special Killing 0-forms", "a = a′/3, c = 4a²"),
    ("cone-skf", "cone lift of Killing-Yano forms", "θ̄ = r^p dr∧α + r^{p+1}β is constant"),
    ("cone-ks", "cone lift of Killing spinors", "Ψ̄ = F±(Ψ) is constant"),
    ("cone-sksf", "cone lift of Killing spinor-valued forms", "Θ̄ = r^p dr∧F±(Φ) + r^{p+1}F±(Ξ) is constant"),
    ("cone-32ksf", "cone lift of the additional solutions", "Θ̄ = r π̄^Tw(F±(Φ′)) is constant"),
    ("chirality-pairing", "half-spinors versus Killing-number signs", "vol_M Ψ = μΨ for Ψ from Σ^χ with sign σ"),
];

/// Anchor and formula for a check key or a full record name.
pub fn explain(name: &str) -> Result<String> {
    let key = name.split('/').nth(1).unwrap_or(name);
    CATALOG
        .iter()
        .find(|(k, _, _)| *k == key)
        .map(|(k, a, f)| format!("{k}\n  anchor:  {a}\n  formula: {f}\n"))
        .ok_or_else(|| Error::Usage(format!("unknown check '{name}'")))
}

fn anchor(key: &str) -> String {
    CATALOG.iter().find(|(k, _, _)| *k == key).map(|(_, a, _)| a.to_string()).unwrap_or_else(|| key.to_string())
}

struct Runner<'a> {
    cfg: &'a SuiteConfig,
    rep: Arc<CliffordRep>,
    records: Vec<Record>,
}

impl Runner<'_> {
    fn push(&mut self, name: String, key: &str, ok: bool, residual_is_zero: bool, dimension: Option<usize>, t: Instant) {
        self.records.push(Record {
            name,
            anchor: anchor(key),
            status: if ok { Status::Pass } else { Status::Fail },
            residual_is_zero,
            dimension,
            elapsed_ms: self.cfg.timings.then(|| t.elapsed().as_millis() as u64),
        });
    }

    /// A residual check: passes iff every residual vanishes.
    fn zero(&mut self, suite: SuiteName, key: &str, params: &str, f: impl FnOnce() -> Result<bool>) {
        let t = Instant::now();
        let ok = f().unwrap_or(false);
        self.push(record_name(suite, key, params), key, ok, ok, None, t);
    }

    /// A check that passes iff a computed dimension matches the expected one.
    fn dim(&mut self, suite: SuiteName, key: &str, params: &str, f: impl FnOnce() -> Result<(usize, usize)>) {
        let t = Instant::now();
        match f() {
            Ok((got, want)) => self.push(record_name(suite, key, params), key, got == want, got == want, Some(got), t),
            Err(_) => self.push(record_name(suite, key, params), key, false, false, None, t),
        }
    }

    fn named(&mut self, suite: SuiteName, params: &str, list: Result<Vec<Named>>, t: Instant) {
        match list {
            Ok(list) => {
                for (key, res) in list {
                    let ok = res.is_zero();
                    self.push(record_name(suite, key, params), key, ok, ok, None, t);
                }
            }
            Err(_) => self.push(record_name(suite, "error", params), "error", false, false, None, t),
        }
    }
}

fn record_name(suite: SuiteName, key: &str, params: &str) -> String {
    if params.is_empty() {
        format!("{}/{key}", suite.as_str())
    } else {
        format!("{}/{key}/{params}", suite.as_str())
    }
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

fn all_zero(parts: impl IntoIterator<Item = Residual>) -> bool {
    parts.into_iter().all(|r| r.is_zero())
}

/// Sample points and tangent frames for one suite.
struct Sample {
    rng: ChaCha8Rng,
    frames: Vec<TangentFrame>,
}

impl Sample {
    fn new(cfg: &SuiteConfig, rep: &CliffordRep, suite: SuiteName) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(suite.stream());
        let count = if suite == SuiteName::Dimensions { cfg.points.max(dimension_points(rep.sig.n())) } else { cfg.points };
        let frames = (0..count)
            .map(|_| TangentFrame::new(rep, &sample_point(&rep.sig, &mut rng)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rng, frames })
    }

    fn points(&self) -> Vec<QuadricPoint> {
        self.frames.iter().map(|t| t.at.clone()).collect()
    }

    fn first(&self) -> &Frame {
        &self.frames[0].frame
    }

    /// Frame for pointwise algebra: small-entry skewed vectors when they are
    /// nondegenerate, else the first tangent frame. Tangent frames at random
    /// points carry large rationals that slow exact arithmetic down a lot.
    fn algebraic(&self, rep: &CliffordRep) -> Frame {
        try_skewed_frame(rep, rep.sig.n()).unwrap_or_else(|_| self.first().clone())
    }
}

/// Point count that gives the evaluation maps of the dimension table at
/// least as many columns as parameters. Evaluation rank bounds the true rank
/// from below and the parameter count bounds it from above.
pub fn dimension_points(n: usize) -> usize {
    n + 3
}

/// Killing numbers used for the operator identities and kernels.
fn test_killing_numbers(rep: &CliffordRep) -> Vec<(String, GR)> {
    let mut v = vec![("1".to_string(), GR::int(1)), ("2".to_string(), GR::int(2)), ("i".to_string(), GR::i())];
    let t = conesol::killing_number_32(rep, Sign::Plus);
    v.push(("3/2*sqrt(eps)".to_string(), t));
    v
}

pub fn run(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let rep = Arc::new(CliffordRep::build(cfg.signature()?));
    let degrees = cfg.degree_list()?;
    let mut runner = Runner { cfg, rep: rep.clone(), records: Vec::new() };
    for suite in &cfg.suites {
        let mut sample = Sample::new(cfg, &rep, *suite)?;
        match suite {
            SuiteName::Algebra => algebra(&mut runner, &mut sample, &degrees),
            SuiteName::Clifford => clifford(&mut runner, &mut sample)?,
            SuiteName::Solutions => solutions(&mut runner, &mut sample, &degrees),
            SuiteName::Integrability => integrability(&mut runner, &mut sample, &degrees),
            SuiteName::Dimensions => {
                for row in dimension_rows(&rep, &sample.points(), &degrees)? {
                    let t = Instant::now();
                    let ok = row.rank == row.bound;
                    let key = format!("dim-{}", row.family);
                    let name = record_name(SuiteName::Dimensions, &key, &row.params());
                    runner.push(name, &key, ok, ok, Some(row.rank), t);
                }
            }
            SuiteName::Nonexistence => nonexistence(&mut runner, &mut sample, &degrees),
            SuiteName::Tractor => tractor(&mut runner, &mut sample, &degrees),
            SuiteName::Correspondence => correspondence(&mut runner, &mut sample, &degrees)?,
        }
    }
    let mut records = runner.records;
    records.sort_by(|a, b| a.name.cmp(&b.name));
    let failed = records.iter().filter(|r| r.status == Status::Fail).count();
    Ok(Report {
        spec_version: SPEC_VERSION.into(),
        config: cfg.clone(),
        passed: records.len() - failed,
        failed,
        records,
    })
}

fn algebra(run: &mut Runner, s: &mut Sample, degrees: &[usize]) {
    let f = s.algebraic(&run.rep);
    let (n, sd) = (f.n(), f.spin_dim());
    for &p in degrees {
        let t = Instant::now();
        let mut acc: Vec<(&'static str, bool)> = Vec::new();
        for _ in 0..FORMS_PER_DEGREE {
            let phi = random_form(&mut s.rng, n, p, sd);
            let x = random_vector(&mut s.rng, n);
            let y = random_vector(&mut s.rng, n);
            for (k, (key, res)) in identities::clifford_identities(&f, &x, &y, &phi).into_iter().enumerate() {
                if acc.len() <= k {
                    acc.push((key, true));
                }
                acc[k].1 &= res.is_zero();
            }
        }
        for (key, ok) in acc {
            run.push(record_name(SuiteName::Algebra, key, &format!("p={p}")), key, ok, ok, None, t);
        }
    }
    for (label, a) in test_killing_numbers(&run.rep) {
        let curv = ModelCurvature::new(a, run.rep.sig.eps);
        for &p in degrees {
            let t = Instant::now();
            let phi = random_form(&mut s.rng, n, p, sd);
            let params = format!("a={label}/p={p}");
            if p == 0 {
                let (key, res) = identities::spinor_identity(&f, &curv, &phi);
                let ok = res.is_zero();
                run.push(record_name(SuiteName::Algebra, key, &params), key, ok, ok, None, t);
            } else {
                run.named(SuiteName::Algebra, &params, identities::curvature_identities(&f, &curv, &phi), t);
            }
        }
        let t = Instant::now();
        let phi = random_form(&mut s.rng, n, 1, sd);
        let xi = random_form(&mut s.rng, n, 2.min(n), sd);
        if n >= 2 {
            run.named(SuiteName::Algebra, &format!("a={label}/p=1"), identities::degree_one_identities(&f, &curv, &phi, &xi), t);
        }
    }
    let t = Instant::now();
    let phi = random_form(&mut s.rng, n, 1, sd);
    run.named(SuiteName::Algebra, "p=1", identities::levi_civita_identities(&f, run.rep.sig.eps, &phi), t);
}

fn clifford(run: &mut Runner, s: &mut Sample) -> Result<()> {
    let rep = run.rep.clone();
    let m = rep.ambient_dim();
    let sd = rep.spinor_dim();
    run.zero(SuiteName::Clifford, "clifford-relation", "", || {
        let diag = rep.sig.ambient_diag();
        for (i, d) in diag.iter().enumerate() {
            for j in 0..m {
                let (gi, gj) = (&rep.gammas[i], &rep.gammas[j]);
                let ac = gi.mat_mul(gj)?.add(&gj.mat_mul(gi)?)?;
                let want = if i == j { -2 * d } else { 0 };
                if ac != ExactMatrix::identity(sd).scale(&GR::int(want)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    let frames = s.frames.clone();
    let psis: Vec<Vec<GR>> = frames.iter().map(|_| random_vector(&mut s.rng, sd)).collect();
    run.zero(SuiteName::Clifford, "f-inverse", "", || {
        for (tf, psi) in frames.iter().zip(&psis) {
            let x = tf.at.coords();
            for sign in Sign::both() {
                let back = rep.f_map(sign, &rep.f_map(sign.flip(), psi, x)?, x)?;
                if back.iter().zip(psi).any(|(a, b)| a != &(GR::int(2) * b)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    run.zero(SuiteName::Clifford, "f-intertwining", "", || {
        for (tf, psi) in frames.iter().zip(&psis) {
            let x = tf.at.coords();
            for v in tf.frame.vectors() {
                for sign in Sign::both() {
                    let lhs = rep.f_map(sign, &rep.clifford_mul(v, psi)?, x)?;
                    let s = -conesol::signed_sqrt_eps(&rep, sign);
                    let rhs = rep.clifford_mul(x, &rep.clifford_mul(v, &rep.f_map(sign, psi, x)?)?)?;
                    if lhs.iter().zip(&rhs).any(|(a, b)| a != &(&s * b)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    });
    if m.is_multiple_of(2) {
        run.zero(SuiteName::Clifford, "chirality", "", || {
            let ch = rep.chirality()?;
            let w = &ch.omega;
            if w.mat_mul(w)? != ExactMatrix::identity(sd) {
                return Ok(false);
            }
            for g in &rep.gammas {
                if !w.mat_mul(g)?.add(&g.mat_mul(w)?)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(ch.basis(Sign::Plus).len() == sd / 2 && ch.basis(Sign::Minus).len() == sd / 2)
        });
    }
    Ok(())
}

fn solutions(run: &mut Runner, s: &mut Sample, degrees: &[usize]) {
    let rep = run.rep.clone();
    let (m, sd) = (rep.ambient_dim(), rep.spinor_dim());
    let eps = rep.sig.eps_scalar();
    let frames = s.frames.clone();
    for &p in degrees {
        let theta = random_form(&mut s.rng, m, p + 1, 1);
        let pp = format!("p={p}");
        let ky = conesol::gen_killing_yano(&rep.sig, &theta);
        let (r1, r2) = (rep.clone(), rep.clone());
        let ky2 = ky.as_ref().ok().cloned();
        run.zero(SuiteName::Solutions, "killing-yano", &pp, || {
            let (alpha, beta) = ky?;
            let mut ok = true;
            for tf in &frames {
                let ja = jet(&r1, tf, &alpha)?;
                let b = killing::frame_value(tf, &beta);
                ok &= killing::check_ksf(&tf.frame, &GR::zero(), &ja, &b).is_zero();
            }
            Ok(ok)
        });
        let e2 = eps.clone();
        run.zero(SuiteName::Solutions, "killing-yano-special", &pp, || {
            let (alpha, beta) = ky2.ok_or(Error::DivisionByZero)?;
            let mut ok = true;
            for tf in &frames {
                let jb = jet(&r2, tf, &beta)?;
                let a = killing::frame_value(tf, &alpha);
                ok &= killing::check_sksf(&tf.frame, &GR::zero(), &e2, &a, &jb).is_zero();
            }
            Ok(ok)
        });

        let theta = random_form(&mut s.rng, m, p + 1, sd);
        for sign in Sign::both() {
            let params = format!("p={p}/sign={}", sign_str(sign));
            let a = conesol::killing_number(&rep, sign);
            let fam = conesol::gen_sksf(&rep, &theta, sign);
            let jets = fam.and_then(|(phi, xi)| {
                frames
                    .iter()
                    .map(|tf| Ok((tf.frame.clone(), jet(&rep, tf, &phi)?, jet(&rep, tf, &xi)?)))
                    .collect::<Result<Vec<_>>>()
            });
            let jets = match jets {
                Ok(j) => j,
                Err(_) => {
                    run.zero(SuiteName::Solutions, "sksf-killing", &params, || Ok(false));
                    continue;
                }
            };
            run.zero(SuiteName::Solutions, "sksf-killing", &params, || {
                Ok(all_zero(jets.iter().map(|(f, jp, jx)| killing::check_ksf(f, &a, jp, &jx.value))))
            });
            run.zero(SuiteName::Solutions, "sksf-special", &params, || {
                Ok(all_zero(jets.iter().map(|(f, jp, jx)| killing::check_sksf(f, &a, &eps, &jp.value, jx))))
            });
            run.zero(SuiteName::Solutions, "xi-from-phi", &params, || {
                Ok(jets.iter().all(|(f, jp, jx)| killing::xi_from_phi(f, &a, jp) == jx.value))
            });
            run.zero(SuiteName::Solutions, "ksf-substituted", &params, || {
                Ok(all_zero(jets.iter().map(|(f, jp, _)| killing::check_ksf_sub(f, &a, jp))))
            });
            if p < rep.sig.n() {
                run.zero(SuiteName::Solutions, "star-killing", &params, || {
                    for (f, jp, jx) in &jets {
                        let st = killing::check_star_killing(f, &a, jx)?;
                        if !st.residual.is_zero() || st.phi != jp.value.scale(&-eps.clone()) {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                });
            }
        }
    }
    if degrees.contains(&0) {
        let psi = random_vector(&mut s.rng, sd);
        for sign in Sign::both() {
            let a = conesol::killing_number(&rep, sign);
            let r = rep.clone();
            let psi = psi.clone();
            run.zero(SuiteName::Solutions, "killing-spinor", &format!("sign={}", sign_str(sign)), || {
                let sec = conesol::gen_killing_spinor(&r, &psi, sign)?;
                let mut ok = true;
                for tf in &frames {
                    let j = jet(&r, tf, &sec)?;
                    ok &= killing::check_ksf(&tf.frame, &a, &j, &tf.frame.zero_form(1)).is_zero();
                }
                Ok(ok)
            });
        }
    }
    if degrees.contains(&1) {
        let theta = random_primitive(&rep, &mut s.rng);
        for sign in Sign::both() {
            let params = format!("sign={}", sign_str(sign));
            let ap = conesol::killing_number_32(&rep, sign);
            let jets: Result<Vec<_>> = conesol::gen_32ksf(&rep, &theta, sign)
                .and_then(|sec| frames.iter().map(|tf| Ok((tf.frame.clone(), jet(&rep, tf, &sec)?))).collect());
            let jets2 = jets.as_ref().ok().cloned();
            run.zero(SuiteName::Solutions, "32ksf", &params, || {
                let mut ok = true;
                for (f, j) in jets? {
                    ok &= killing::check_32ksf(&f, &ap, &j)?.is_zero();
                }
                Ok(ok)
            });
            run.zero(SuiteName::Solutions, "32ksf-killing", &params, || {
                let mut ok = true;
                for (f, j) in jets2.ok_or(Error::DivisionByZero)? {
                    let xi = f.clf_wedge(&j.value).scale(&(GR::ratio(-2, 3) * &ap));
                    ok &= killing::check_ksf(&f, &ap, &j, &xi).is_zero();
                }
                Ok(ok)
            });
        }
    }
}

/// A random primitive ambient spinor-valued 1-form.
fn random_primitive(rep: &CliffordRep, rng: &mut ChaCha8Rng) -> SVForm {
    let theta = random_form(rng, rep.ambient_dim(), 1, rep.spinor_dim());
    conesol::ambient_primitive_project(rep, &theta).expect("degree one").1
}

type JetPair = (Frame, killing::Jet, killing::Jet);

fn family_jets(rep: &Arc<CliffordRep>, frames: &[TangentFrame], phi: &PolySection, xi: &PolySection) -> Result<Vec<JetPair>> {
    frames.iter().map(|tf| Ok((tf.frame.clone(), jet(rep, tf, phi)?, jet(rep, tf, xi)?))).collect()
}

fn integrability(run: &mut Runner, s: &mut Sample, degrees: &[usize]) {
    let rep = run.rep.clone();
    let (m, sd) = (rep.ambient_dim(), rep.spinor_dim());
    let eps = rep.sig.eps_scalar();
    let frames = s.frames.clone();
    for &p in degrees {
        let theta = random_form(&mut s.rng, m, p + 1, sd);
        for sign in Sign::both() {
            let params = format!("p={p}/sign={}", sign_str(sign));
            let curv = ModelCurvature::new(conesol::killing_number(&rep, sign), rep.sig.eps);
            let jets = conesol::gen_sksf(&rep, &theta, sign).and_then(|(phi, xi)| family_jets(&rep, &frames, &phi, &xi));
            let Ok(jets) = jets else {
                run.zero(SuiteName::Integrability, "int-first", &params, || Ok(false));
                continue;
            };
            if p >= 1 {
                run.zero(SuiteName::Integrability, "int-first", &params, || {
                    for (f, jp, _) in &jets {
                        if !killing::int_first(f, &curv, &jp.value)?.is_zero() {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                });
                run.zero(SuiteName::Integrability, "int-second", &params, || {
                    for (f, jp, jx) in &jets {
                        if !killing::int_second(f, &curv, &jp.value, &jx.value)?.is_zero() {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                });
            }
            for which in 0..4u8 {
                let key = ["int-special-0", "int-special-1", "int-special-2", "int-special-3"][which as usize];
                run.zero(SuiteName::Integrability, key, &params, || {
                    for (f, jp, jx) in &jets {
                        if !killing::int_special(f, &curv, &eps, &jp.value, &jx.value, which)?.is_zero() {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                });
            }
            // ρ^aff(X∧Y) kills 0-forms and top forms, so c is invisible there
            if p == 0 || p == rep.sig.n() {
                continue;
            }
            run.zero(SuiteName::Integrability, "int-special-0-perturbed", &params, || {
                let c = &eps + &GR::int(1);
                for (f, jp, jx) in &jets {
                    if jp.value.is_zero() {
                        continue;
                    }
                    if killing::int_special(f, &curv, &c, &jp.value, &jx.value, 0)?.is_zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
        }
    }
    if degrees.contains(&1) {
        let f = s.first().clone();
        let phi = random_form(&mut s.rng, f.n(), 1, sd);
        for (label, a) in test_killing_numbers(&rep) {
            let curv = ModelCurvature::new(a, rep.sig.eps);
            run.zero(SuiteName::Integrability, "int-first-vacuous", &format!("a={label}"), || {
                Ok(killing::int_first(&f, &curv, &phi)?.is_zero())
            });
        }
    }
}

fn nonexistence(run: &mut Runner, s: &mut Sample, degrees: &[usize]) {
    let rep = run.rep.clone();
    let f = s.algebraic(&rep);
    let eps = rep.sig.eps;
    for (label, a) in test_killing_numbers(&rep) {
        let curv = ModelCurvature::new(a.clone(), eps);
        for &p in degrees.iter().filter(|&&p| p >= 2) {
            run.dim(SuiteName::Nonexistence, "kernel-first", &format!("a={label}/p={p}"), || {
                Ok((killing::curvature_kernel(&f, &curv, p, KernelConditions::First)?, 0))
            });
        }
        run.dim(SuiteName::Nonexistence, "kernel-killing-spinor", &format!("a={label}"), || {
            Ok((killing::curvature_annihilator(&f, &curv, 0), 0))
        });
        if degrees.contains(&1) && label == "1" {
            run.dim(SuiteName::Nonexistence, "kernel-second-graph", &format!("a={label}/p=1"), || {
                let joint = killing::curvature_kernel(&f, &curv, 1, KernelConditions::FirstSecond)?;
                let graph = second_condition_on_graph(&f, &curv)?;
                Ok((joint, graph))
            });
        }
    }
    for sign in Sign::both() {
        let curv = ModelCurvature::new(conesol::killing_number(&rep, sign), eps);
        run.dim(SuiteName::Nonexistence, "kernel-killing-spinor-critical", &format!("sign={}", sign_str(sign)), || {
            Ok((killing::curvature_annihilator(&f, &curv, 0), f.spin_dim()))
        });
    }
    run.dim(SuiteName::Nonexistence, "kernel-parallel", "p=1", || {
        Ok((killing::curvature_annihilator(&f, &ModelCurvature::new(GR::zero(), eps), 1), 0))
    });
}

/// Nullity of `Φ ↦ int₂(Φ, −⅔a clf∧Φ)` on 1-forms.
pub fn second_condition_on_graph(f: &Frame, curv: &ModelCurvature) -> Result<usize> {
    let sd = f.spin_dim();
    let images = killing::form_basis(f, 1)
        .iter()
        .map(|phi| {
            let xi = f.clf_wedge(phi).scale(&(GR::ratio(-2, 3) * &curv.a));
            let t = killing::int_second(f, curv, phi, &xi)?;
            Ok(t.forms().iter().flat_map(|g| g.to_vector_shaped(t.degree(), sd)).collect())
        })
        .collect::<Result<Vec<Vec<GR>>>>()?;
    Ok(killing::nullity_of_images(&images))
}

fn tractor(run: &mut Runner, s: &mut Sample, degrees: &[usize]) {
    let rep = run.rep.clone();
    let (m, sd) = (rep.ambient_dim(), rep.spinor_dim());
    let eps = rep.sig.eps;
    let frames = s.frames.clone();
    let f = s.first().clone();
    let n = f.n() as i64;
    for &p in degrees.iter().filter(|&&p| p >= 1) {
        let theta = random_form(&mut s.rng, m, p + 1, sd);
        for sign in Sign::both() {
            let params = format!("p={p}/sign={}", sign_str(sign));
            let curv = ModelCurvature::new(conesol::killing_number(&rep, sign), eps);
            run.zero(SuiteName::Tractor, "killing-connection", &params, || {
                let (phi, xi) = conesol::gen_sksf(&rep, &theta, sign)?;
                for (fr, jp, jx) in family_jets(&rep, &frames, &phi, &xi)? {
                    for (top, bottom) in killing::killing_conn_apply(&fr, &curv, &jp, &jx)? {
                        if !top.is_zero() || !bottom.is_zero() {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            });
        }
        for (label, a) in test_killing_numbers(&rep) {
            let curv = ModelCurvature::new(a, eps);
            let jp = random_jet(&mut s.rng, &f, p);
            let jx = random_jet(&mut s.rng, &f, p + 1);
            run.zero(SuiteName::Tractor, "tractor-compare", &format!("a={label}/p={p}"), || {
                Ok(killing::tractor_compare(&f, &curv, &jp, &jx)?.is_zero())
            });
        }
    }
    run.zero(SuiteName::Tractor, "schouten", "", || Ok(killing::schouten(&f, eps) == f.gram().scale(&GR::int(eps.into()))));
    run.zero(SuiteName::Tractor, "scalar-curvature", "", || {
        let sc = killing::scalar_curvature(&f, eps);
        let a = conesol::killing_number(&rep, Sign::Plus);
        Ok(sc == GR::int(n * (n - 1) * i64::from(eps)) && sc == GR::int(4 * n * (n - 1)) * &a * &a)
    });
}

fn random_jet(rng: &mut ChaCha8Rng, f: &Frame, deg: usize) -> killing::Jet {
    killing::Jet {
        value: random_form(rng, f.n(), deg, f.spin_dim()),
        derivs: (0..f.n()).map(|_| random_form(rng, f.n(), deg, f.spin_dim())).collect(),
    }
}

fn correspondence(run: &mut Runner, s: &mut Sample, degrees: &[usize]) -> Result<()> {
    let rep = run.rep.clone();
    let (m, sd) = (rep.ambient_dim(), rep.spinor_dim());
    let frames = s.frames.clone();
    let pts = s.points();
    let radii = [GR::int(1), GR::int(2), GR::ratio(1, 3)];
    let lift_ok = |data: &ConeData, theta: &SVForm, sign: Sign| -> Result<bool> {
        let lift = conesol::cone_lift(&rep, data, &pts, &radii)?;
        if !lift.constant || &lift.theta != theta {
            return Ok(false);
        }
        for x in &pts {
            let xc = x.coords();
            let (u, v) = conesol::cone_restrict(&rep, data.kind(), sign, &lift.theta, xc);
            let (eu, ev) = match data {
                ConeData::Skf { alpha, beta } => (alpha.eval(xc), Some(beta.eval(xc))),
                ConeData::Ks { psi, .. } => (psi.eval(xc), None),
                ConeData::Sksf { phi, xi, .. } => (phi.eval(xc), Some(xi.eval(xc))),
                ConeData::Ksf32 { phi, .. } => (phi.eval(xc), None),
            };
            if u != eu || v != ev {
                return Ok(false);
            }
        }
        Ok(true)
    };
    for &p in degrees {
        let theta = random_form(&mut s.rng, m, p + 1, 1);
        run.zero(SuiteName::Correspondence, "cone-skf", &format!("p={p}"), || {
            let (alpha, beta) = conesol::gen_killing_yano(&rep.sig, &theta)?;
            lift_ok(&ConeData::Skf { alpha, beta }, &theta, Sign::Plus)
        });
        let theta = random_form(&mut s.rng, m, p + 1, sd);
        for sign in Sign::both() {
            run.zero(SuiteName::Correspondence, "cone-sksf", &format!("p={p}/sign={}", sign_str(sign)), || {
                let (phi, xi) = conesol::gen_sksf(&rep, &theta, sign)?;
                lift_ok(&ConeData::Sksf { phi, xi, sign }, &theta, sign)
            });
        }
    }
    if degrees.contains(&0) {
        let psi = random_vector(&mut s.rng, sd);
        for sign in Sign::both() {
            run.zero(SuiteName::Correspondence, "cone-ks", &format!("sign={}", sign_str(sign)), || {
                let sec = conesol::gen_killing_spinor(&rep, &psi, sign)?;
                lift_ok(&ConeData::Ks { psi: sec, sign }, &SVForm::scalar(m, psi.clone()), sign)
            });
        }
        if m % 2 == 0 {
            run.zero(SuiteName::Correspondence, "chirality-pairing", "", || {
                let pairs = conesol::chirality_pairing(&rep, &pts)?;
                // each Killing sign meets both eigenvalues of the intrinsic volume
                Ok(Sign::both().iter().all(|s| {
                    let mus: Vec<_> = pairs.iter().filter(|p| p.killing_sign == *s).map(|p| p.volume_eigenvalue).collect();
                    mus.len() == 2 && mus[0] != mus[1]
                }))
            });
        }
    }
    if degrees.contains(&1) {
        let theta = random_primitive(&rep, &mut s.rng);
        for sign in Sign::both() {
            let params = format!("sign={}", sign_str(sign));
            let ap = conesol::killing_number_32(&rep, sign);
            let a = &ap * &GR::ratio(1, 3);
            run.zero(SuiteName::Correspondence, "cone-32ksf", &params, || {
                let phi = conesol::gen_32ksf(&rep, &theta, sign)?;
                lift_ok(&ConeData::Ksf32 { phi, sign }, &theta, sign)
            });
            let sec = conesol::gen_32ksf(&rep, &theta, sign)?;
            let vals: Vec<(Frame, SVForm)> =
                frames.iter().map(|tf| (tf.frame.clone(), killing::frame_value(tf, &sec))).collect();
            run.zero(SuiteName::Correspondence, "cor32-roundtrip", &params, || {
                for (f, v) in &vals {
                    let (phi, xi) = killing::cor32_fwd(f, &a, v)?;
                    let back = killing::cor32_bwd(f, &a, &phi, &xi)?;
                    let again = killing::cor32_fwd(f, &a, &back)?;
                    if &back != v || again != (phi, xi) {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
            run.zero(SuiteName::Correspondence, "cor32-constraint", &params, || {
                for (f, v) in &vals {
                    let (phi, xi) = killing::cor32_fwd(f, &a, v)?;
                    if !killing::cor32_constraint(f, &a, &phi, &xi).is_zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            });
            run.zero(SuiteName::Correspondence, "cor32-special", &params, || {
                let (phi, xi) = killing::cor32_fwd_section(&rep, &sec, &a)?;
                let c = GR::int(4) * &a * &a;
                for (f, jp, jx) in family_jets(&rep, &frames, &phi, &xi)? {
                    if !killing::check_ksf(&f, &a, &jp, &jx.value).is_zero()
                        || !killing::check_sksf(&f, &a, &c, &jp.value, &jx).is_zero()
                    {
                        return Ok(false);
                    }
                }
                Ok(c == rep.sig.eps_scalar())
            });
        }
    }
    Ok(())
}

/// One row of the dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub family: String,
    pub n: usize,
    pub eps: i8,
    pub p: usize,
    pub sign: Option<Sign>,
    pub chirality: Option<Sign>,
    pub a: Option<GR>,
    pub rank: usize,
    pub bound: usize,
}

impl DimensionRow {
    fn params(&self) -> String {
        let mut s = format!("p={}", self.p);
        if let Some(sg) = self.sign {
            s.push_str(&format!("/sign={}", sign_str(sg)));
        }
        if let Some(c) = self.chirality {
            s.push_str(&format!("/chirality={}", sign_str(c)));
        }
        s
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A maximal linearly independent subfamily, in order.
fn independent(forms: Vec<SVForm>) -> Vec<SVForm> {
    let cols = forms.first().map_or(0, |f| f.to_vector().len());
    let mut acc = crate::exact::RankAccumulator::new(cols);
    forms.into_iter().filter(|f| acc.push_row(f.to_vector())).collect()
}

/// Ranks of every solution family in the ambient realization against the
/// maximal dimensions.
pub fn dimension_rows(rep: &Arc<CliffordRep>, pts: &[QuadricPoint], degrees: &[usize]) -> Result<Vec<DimensionRow>> {
    let sig = rep.sig;
    let (n, eps, sd) = (sig.n(), sig.eps, rep.spinor_dim());
    let mut rows = Vec::new();
    let row = |family: &str, p, sign, chirality, a, rank, bound| DimensionRow {
        family: family.into(),
        n,
        eps,
        p,
        sign,
        chirality,
        a,
        rank,
        bound,
    };
    for &p in degrees {
        let params = conesol::scalar_param_basis(&sig, p + 1);
        let rank = killing::solution_dimension(rep, &params, |t| conesol::gen_killing_yano(&sig, t).map(|(a, b)| vec![a, b]), pts)?;
        rows.push(row("killing-yano", p, None, None, None, rank, binom(n + 1, p + 1)));
        let params = conesol::ambient_param_basis(rep, p + 1, None)?;
        for sign in Sign::both() {
            let a = conesol::killing_number(rep, sign);
            let rank = killing::solution_dimension(rep, &params, |t| conesol::gen_sksf(rep, t, sign).map(|(a, b)| vec![a, b]), pts)?;
            rows.push(row("sksf", p, Some(sign), None, Some(a), rank, binom(n + 1, p + 1) * sd));
        }
    }
    if degrees.contains(&0) {
        let bound = 1usize << (n / 2);
        for sign in Sign::both() {
            let a = conesol::killing_number(rep, sign);
            let chis: Vec<Option<Sign>> = if (n + 1) % 2 == 0 { vec![Some(Sign::Plus), Some(Sign::Minus)] } else { vec![None] };
            for chi in chis {
                let params = conesol::ambient_param_basis(rep, 0, chi)?;
                let rank = killing::solution_dimension(rep, &params, |t| conesol::gen_killing_spinor(rep, &t.component(0), sign).map(|s| vec![s]), pts)?;
                rows.push(row("killing-spinor", 0, Some(sign), chi, Some(a.clone()), rank, bound));
            }
        }
    }
    if degrees.contains(&1) {
        let prim = independent(conesol::primitive_param_basis(rep, None)?);
        let prim_rank = prim.len();
        let ksf_params = conesol::ambient_param_basis(rep, 2, None)?;
        for sign in Sign::both() {
            let ap = conesol::killing_number_32(rep, sign);
            let gen32 = |t: &SVForm| conesol::gen_32ksf(rep, t, sign).map(|s| vec![s]);
            let rank32 = killing::solution_dimension(rep, &prim, gen32, pts)?;
            rows.push(row("32ksf", 1, Some(sign), None, Some(ap.clone()), rank32, prim_rank));
            // Φ-parts only: ksf of degree one and the additional solutions
            let gen1 = |t: &SVForm| conesol::gen_sksf(rep, t, sign).map(|(a, _)| vec![a]);
            let rank1 = killing::solution_dimension(rep, &ksf_params, gen1, pts)?;
            let mut joint_params: Vec<(bool, SVForm)> = ksf_params.iter().map(|t| (true, t.clone())).collect();
            joint_params.extend(prim.iter().map(|t| (false, t.clone())));
            let joint = joint_rank(rep, &joint_params, sign, pts)?;
            rows.push(row("joint", 1, Some(sign), None, None, joint, rank1 + rank32));
        }
    }
    Ok(rows)
}

fn joint_rank(rep: &Arc<CliffordRep>, params: &[(bool, SVForm)], sign: Sign, pts: &[QuadricPoint]) -> Result<usize> {
    let sections = params
        .iter()
        .map(|(is_ksf, t)| Ok(vec![if *is_ksf { conesol::gen_sksf(rep, t, sign)?.0 } else { conesol::gen_32ksf(rep, t, sign)? }]))
        .collect::<Result<Vec<_>>>()?;
    Ok(killing::section_rank(rep, &sections, pts))
}

/// Dimension table for a configuration, sampling points from the seed.
pub fn table_dimensions(cfg: &SuiteConfig) -> Result<Vec<DimensionRow>> {
    cfg.validate()?;
    let rep = Arc::new(CliffordRep::build(cfg.signature()?));
    let sample = Sample::new(cfg, &rep, SuiteName::Dimensions)?;
    dimension_rows(&rep, &sample.points(), &cfg.degree_list()?)
}

pub fn dimensions_text(rows: &[DimensionRow]) -> String {
    let mut s = format!("{:<15} {:>2} {:>3} {:>2} {:>4} {:>4} {:>10} {:>6} {:>6}\n", "family", "n", "eps", "p", "sign", "chi", "a", "rank", "bound");
    let opt = |s: Option<Sign>| s.map(sign_str).unwrap_or("");
    for r in rows {
        s.push_str(&format!(
            "{:<15} {:>2} {:>3} {:>2} {:>4} {:>4} {:>10} {:>6} {:>6}\n",
            r.family,
            r.n,
            r.eps,
            r.p,
            opt(r.sign),
            opt(r.chirality),
            r.a.as_ref().map(|a| a.to_string()).unwrap_or_default(),
            r.rank,
            r.bound
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(np: usize, nm: usize, eps: i8) -> SuiteConfig {
        SuiteConfig { n_plus: np, n_minus: nm, eps, ..SuiteConfig::default() }
    }

    #[test]
    fn parse_suites() {
        assert_eq!(SuiteName::parse_list("all").unwrap().len(), 8);
        assert_eq!(SuiteName::parse_list("").unwrap(), vec![]);
        assert_eq!(SuiteName::parse_list("tractor,algebra").unwrap(), vec![SuiteName::Algebra, SuiteName::Tractor]);
        assert!(SuiteName::parse_list("bogus").is_err());
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(run(&cfg(1, 0, 1)), Err(Error::Usage(_))));
        assert!(matches!(run(&SuiteConfig { degrees: vec![9], ..cfg(3, 0, 1) }), Err(Error::Usage(_))));
        assert!(matches!(run(&SuiteConfig { spinor_cap: 2, ..cfg(3, 0, 1) }), Err(Error::Usage(_))));
        assert!(matches!(run(&SuiteConfig { points: 0, ..cfg(3, 0, 1) }), Err(Error::Usage(_))));
    }

    #[test]
    fn empty_suite_list_passes() {
        let r = run(&SuiteConfig { suites: vec![], ..cfg(2, 0, 1) }).unwrap();
        assert!(r.records.is_empty() && r.all_pass());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn failed_record_sets_exit_code() {
        let mut r = run(&SuiteConfig { suites: vec![SuiteName::Tractor], degrees: vec![1], ..cfg(2, 0, 1) }).unwrap();
        assert_eq!(r.exit_code(), 0);
        r.records[0].status = Status::Fail;
        r.failed = 1;
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn explain_names() {
        assert!(explain("clfclv").unwrap().contains("(2p − n)Φ"));
        assert!(explain("algebra/r1-curvature/a=1/p=2").unwrap().contains("clv ⨼ (clv ⨼ Φ)"));
        assert!(explain("bogus").is_err());
        for (k, _, _) in CATALOG {
            assert!(explain(k).is_ok());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(6, 3), 20);
        assert_eq!(binom(2, 3), 0);
    }
}
