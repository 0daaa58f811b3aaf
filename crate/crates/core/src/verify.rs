//! End-to-end verification of `√(F_1, ..., F_r) = J_{s,t}` and the JSON
//! certificate it produces.
//!
//! Containment `F_i ∈ J` is checked first by normal forms against the
//! reduced basis of `J`. Radical containment then uses the set's hints, if
//! any, each checked by its own Rabinowitsch computation, and falls back to
//! a direct check of `g ∈ √(F)` for every generator `g` of `J` not already
//! obtained. Equality follows because `J` is radical.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{explicit_small, stci_s2, theorem7_set, EquationSet};
use crate::error::{GroebnerError, IdealError, VerifyError};
use crate::groebner::{GroebnerOptions, DEFAULT_BUDGET};
use crate::ideal::{radical_membership, Ideal, RadicalEvidence};
use crate::minvar::{build_ideal_j, BarredMatrix, BarredMatrixSpec};
use crate::poly::{parse_polynomial_list, CoefficientField, Field, Poly, PrimeField, Rationals, TermOrder};

/// Built-in candidate sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    S2,
    S2Homog,
    Thm7,
    Explicit,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::S2 => "s2",
            Method::S2Homog => "s2-homog",
            Method::Thm7 => "thm7",
            Method::Explicit => "explicit",
        })
    }
}

impl FromStr for Method {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "s2" => Ok(Method::S2),
            "s2-homog" => Ok(Method::S2Homog),
            "thm7" => Ok(Method::Thm7),
            "explicit" => Ok(Method::Explicit),
            other => Err(VerifyError::UnknownMethod(other.to_string())),
        }
    }
}

/// Where the candidate set comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetSource {
    Method(Method),
    /// One polynomial per line in the matrix ring's variables.
    Text(String),
}

/// Builds the candidate set for `m`.
pub fn build_set<F: Field>(m: &BarredMatrix<F>, source: &SetSource) -> Result<EquationSet<F>, VerifyError> {
    let set = match source {
        SetSource::Method(Method::S2) => stci_s2(m, false)?,
        SetSource::Method(Method::S2Homog) => stci_s2(m, true)?,
        SetSource::Method(Method::Thm7) => theorem7_set(m)?,
        SetSource::Method(Method::Explicit) => explicit_small(m)?,
        SetSource::Text(text) => {
            let polys =
                parse_polynomial_list(text, m.ring()).map_err(|(line, source)| VerifyError::Parse { line, source })?;
            EquationSet {
                label: "custom".into(),
                polys,
                metadata: Default::default(),
                hints: Vec::new(),
            }
        }
    };
    if set.is_empty() {
        return Err(VerifyError::EmptySet);
    }
    Ok(set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Reduction budget for each Gröbner computation.
    pub budget: u64,
    /// Worker threads for the per-generator checks; 0 means rayon's default.
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            jobs: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Proved,
    Refuted,
    ResourcesExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Proved => "proved",
            Verdict::Refuted => "refuted",
            Verdict::ResourcesExceeded => "resources_exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub s: usize,
    pub t: usize,
    pub ident: String,
    pub field: String,
    pub order: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentEntry {
    pub poly: String,
    pub member: bool,
}

/// How a generator of `J` was shown to lie in `√(F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// The generator is itself a checked hint claim.
    Hint,
    /// Rabinowitsch check against `F` and the checked claims.
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalEntry {
    pub gen: String,
    pub in_radical: bool,
    pub gb_size: usize,
    pub reductions: u64,
    /// The budget ran out; `in_radical` is then false but not a refutation.
    #[serde(default)]
    pub exhausted: bool,
    pub route: Route,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepOutcome {
    Proved,
    NotProved,
    Exhausted,
    /// `within` mentions a polynomial that is neither in the set nor an
    /// earlier checked claim.
    Inadmissible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEntry {
    pub claim: String,
    pub within: Vec<String>,
    pub outcome: StepOutcome,
    pub gb_size: usize,
    pub reductions: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationCertificate {
    pub spec: SpecRecord,
    pub set: String,
    pub polys: Vec<String>,
    pub containment: Vec<ContainmentEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<StepEntry>,
    pub radical: Vec<RadicalEntry>,
    pub verdict: Verdict,
    #[serde(default)]
    pub witness: Option<String>,
    pub ms: u64,
}

impl VerificationCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization is infallible")
    }

    /// Parses and validates a certificate.
    pub fn from_json(text: &str) -> Result<Self, VerifyError> {
        let cert: Self = serde_json::from_str(text).map_err(|e| VerifyError::Certificate(e.to_string()))?;
        cert.validate()?;
        Ok(cert)
    }

    /// The first definite failure: a non-member of `J`, else a generator
    /// of `J` outside `√(F)`.
    pub fn first_failure(&self) -> Option<&str> {
        self.containment
            .iter()
            .find(|c| !c.member)
            .map(|c| c.poly.as_str())
            .or_else(|| {
                self.radical
                    .iter()
                    .find(|r| !r.in_radical && !r.exhausted)
                    .map(|r| r.gen.as_str())
            })
    }

    /// Checks that the verdict and witness agree with the evidence.
    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |msg: &str| Err(VerifyError::Certificate(msg.to_string()));
        if self.radical.iter().any(|r| r.exhausted && r.in_radical) {
            return bad("an exhausted check cannot report membership");
        }
        let failure = self.first_failure();
        let exhausted = self.radical.iter().any(|r| r.exhausted);
        match self.verdict {
            Verdict::Proved => {
                let all = self.containment.iter().all(|c| c.member) && self.radical.iter().all(|r| r.in_radical);
                if !all || self.radical.is_empty() || self.containment.len() != self.polys.len() {
                    return bad("proved verdict without complete evidence");
                }
                if self.witness.is_some() {
                    return bad("proved verdict carries a witness");
                }
            }
            Verdict::Refuted => match (failure, &self.witness) {
                (Some(f), Some(w)) if f == w => {}
                _ => return bad("refuted verdict must carry the first failing polynomial"),
            },
            Verdict::ResourcesExceeded => {
                if failure.is_some() {
                    return bad("a definite failure makes the verdict refuted");
                }
                if !exhausted && self.containment.len() == self.polys.len() {
                    return bad("resources_exceeded without an exhausted check");
                }
                if self.witness.is_some() {
                    return bad("resources_exceeded carries a witness");
                }
            }
        }
        Ok(())
    }
}

struct Check {
    in_radical: bool,
    gb_size: usize,
    reductions: u64,
    exhausted: bool,
}

fn check<F: Field>(g: &Poly<F>, gens: Vec<Poly<F>>, opts: GroebnerOptions) -> Result<Check, VerifyError> {
    let ideal = Ideal::new(g.ring(), gens)
        .map_err(|_| VerifyError::EmptySet)?
        .with_options(opts);
    match radical_membership(g, &ideal) {
        Ok(RadicalEvidence {
            in_radical,
            gb_size,
            reductions,
        }) => Ok(Check {
            in_radical,
            gb_size,
            reductions,
            exhausted: false,
        }),
        Err(IdealError::Groebner(GroebnerError::ResourceLimit { budget })) => Ok(Check {
            in_radical: false,
            gb_size: 0,
            reductions: budget,
            exhausted: true,
        }),
        Err(e) => Err(VerifyError::Certificate(e.to_string())),
    }
}

fn degree_key<F: Field>(p: &Poly<F>) -> u32 {
    p.total_degree().unwrap_or(0)
}

/// Verifies `√(eqs) = J_{s,t}` in the ring of `m`.
///
/// Deterministic apart from `ms`: results are assembled in a fixed order
/// whatever the thread count.
pub fn verify_defining_set<F: Field>(
    m: &BarredMatrix<F>,
    eqs: &EquationSet<F>,
    opts: &VerifyOptions,
) -> Result<VerificationCertificate, VerifyError> {
    let start = Instant::now();
    let ring = m.ring();
    if eqs.is_empty() {
        return Err(VerifyError::EmptySet);
    }
    if eqs.polys.iter().any(|p| !p.ring().same_as(ring)) {
        return Err(VerifyError::Certificate("equation set lives in another ring".into()));
    }
    let gb_opts = GroebnerOptions::with_budget(opts.budget);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| VerifyError::Certificate(e.to_string()))?;

    let spec = m.spec();
    let mut cert = VerificationCertificate {
        spec: SpecRecord {
            s: spec.s(),
            t: spec.t(),
            ident: spec.identification().to_string(),
            field: ring.field().descriptor().to_string(),
            order: ring.order().name(),
        },
        set: eqs.label.clone(),
        polys: eqs.to_strings(),
        containment: Vec::new(),
        steps: Vec::new(),
        radical: Vec::new(),
        verdict: Verdict::ResourcesExceeded,
        witness: None,
        ms: 0,
    };
    let finish = |mut cert: VerificationCertificate, verdict: Verdict| {
        cert.witness = match verdict {
            Verdict::Refuted => cert.first_failure().map(str::to_string),
            _ => None,
        };
        cert.verdict = verdict;
        cert.ms = start.elapsed().as_millis() as u64;
        cert
    };

    let j = build_ideal_j(m).with_options(gb_opts);
    let j_gb = match j.groebner() {
        Ok(gb) => gb,
        Err(IdealError::Groebner(GroebnerError::ResourceLimit { .. })) => {
            return Ok(finish(cert, Verdict::ResourcesExceeded));
        }
        Err(e) => return Err(VerifyError::Certificate(e.to_string())),
    };
    cert.containment = eqs
        .polys
        .iter()
        .map(|f| ContainmentEntry {
            poly: f.to_string(),
            member: j_gb.contains(f),
        })
        .collect();
    if cert.containment.iter().any(|c| !c.member) {
        return Ok(finish(cert, Verdict::Refuted));
    }

    // hints run in order since each may use earlier claims
    let mut proven: Vec<Poly<F>> = Vec::new();
    for hint in &eqs.hints {
        let admissible = hint.within.iter().all(|p| eqs.polys.contains(p) || proven.contains(p));
        let mut entry = StepEntry {
            claim: hint.claim.to_string(),
            within: hint.within.iter().map(|p| p.to_string()).collect(),
            outcome: StepOutcome::Inadmissible,
            gb_size: 0,
            reductions: 0,
        };
        if admissible && !hint.within.is_empty() {
            let c = check(&hint.claim, hint.within.clone(), gb_opts)?;
            entry.gb_size = c.gb_size;
            entry.reductions = c.reductions;
            entry.outcome = if c.in_radical {
                proven.push(hint.claim.clone());
                StepOutcome::Proved
            } else if c.exhausted {
                StepOutcome::Exhausted
            } else {
                StepOutcome::NotProved
            };
        }
        cert.steps.push(entry);
    }

    let mut gens: Vec<Poly<F>> = j.generators().to_vec();
    gens.sort_by_key(degree_key);
    let mut base = eqs.polys.clone();
    base.extend(proven.iter().filter(|p| !eqs.polys.contains(p)).cloned());
    let results: Vec<Result<RadicalEntry, VerifyError>> = pool.install(|| {
        gens.par_iter()
            .map(|g| {
                if proven.contains(g) {
                    return Ok(RadicalEntry {
                        gen: g.to_string(),
                        in_radical: true,
                        gb_size: 0,
                        reductions: 0,
                        exhausted: false,
                        route: Route::Hint,
                    });
                }
                let c = check(g, base.clone(), gb_opts)?;
                Ok(RadicalEntry {
                    gen: g.to_string(),
                    in_radical: c.in_radical,
                    gb_size: c.gb_size,
                    reductions: c.reductions,
                    exhausted: c.exhausted,
                    route: Route::Direct,
                })
            })
            .collect()
    });
    cert.radical = results.into_iter().collect::<Result<_, _>>()?;

    let verdict = if cert.first_failure().is_some() {
        Verdict::Refuted
    } else if cert.radical.iter().any(|r| r.exhausted) {
        Verdict::ResourcesExceeded
    } else {
        Verdict::Proved
    };
    Ok(finish(cert, verdict))
}

/// A verification request with the field chosen at run time.
#[derive(Clone, Debug)]
pub struct VerifyRequest {
    pub spec: BarredMatrixSpec,
    pub field: CoefficientField,
    pub order: TermOrder,
    pub source: SetSource,
    pub opts: VerifyOptions,
}

/// Runs [`verify_defining_set`] over the requested field.
pub fn run_verification(req: &VerifyRequest) -> Result<VerificationCertificate, VerifyError> {
    fn go<F: Field>(req: &VerifyRequest, field: F) -> Result<VerificationCertificate, VerifyError> {
        let m = BarredMatrix::new(&req.spec, field, req.order.clone());
        let set = build_set(&m, &req.source)?;
        verify_defining_set(&m, &set, &req.opts)
    }
    match req.field {
        CoefficientField::Rational => go(req, Rationals),
        CoefficientField::Prime(p) => go(
            req,
            PrimeField::new(p).map_err(|e| VerifyError::Certificate(e.to_string()))?,
        ),
    }
}
