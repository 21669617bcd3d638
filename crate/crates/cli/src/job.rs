//! Job documents: a single JSON object carrying the shear parameter, the
//! polynomial, the polytope constraints, and the requested analyses.
//!
//! Rationals are written as integers or `"p/q"` strings; floating point is
//! never accepted.

use serde::{Deserialize, Serialize};

use mutsurf::detrop::{FactoredPoly, PolyRepr};
use mutsurf::polyptych::{ShearParam, TropicalPoint};
use mutsurf::{Int, Rat};

use crate::CliError;

/// Analyses the pipeline can run, in dependency order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Analysis {
    Validate,
    Charts,
    Moduli,
    ClassGroup,
    Cox,
    Complexity,
    Toricity,
    Singularities,
    Degeneration,
    DualMutation,
    Family,
}

impl Analysis {
    pub const ALL: [Analysis; 11] = [
        Analysis::Validate,
        Analysis::Charts,
        Analysis::Moduli,
        Analysis::ClassGroup,
        Analysis::Cox,
        Analysis::Complexity,
        Analysis::Toricity,
        Analysis::Singularities,
        Analysis::Degeneration,
        Analysis::DualMutation,
        Analysis::Family,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Analysis::Validate => "validate",
            Analysis::Charts => "charts",
            Analysis::Moduli => "moduli",
            Analysis::ClassGroup => "classgroup",
            Analysis::Cox => "cox",
            Analysis::Complexity => "complexity",
            Analysis::Toricity => "toricity",
            Analysis::Singularities => "singularities",
            Analysis::Degeneration => "degeneration",
            Analysis::DualMutation => "dual-mutation",
            Analysis::Family => "family",
        }
    }

    pub fn parse_list(names: &[String]) -> Result<Vec<Analysis>, CliError> {
        let mut set = std::collections::BTreeSet::new();
        for name in names {
            if name == "all" {
                set.extend(Analysis::ALL);
                continue;
            }
            let found = Analysis::ALL.iter().find(|a| a.name() == name).copied();
            match found {
                Some(a) => {
                    set.insert(a);
                }
                None => return Err(CliError::Parse(format!("unknown analysis '{name}'"))),
            }
        }
        if set.is_empty() {
            set.extend(Analysis::ALL);
        }
        set.insert(Analysis::Validate);
        Ok(set.into_iter().collect())
    }
}

/// A rational literal: a JSON integer or a `"p/q"` string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatLit {
    Int(i64),
    Str(String),
}

impl RatLit {
    pub fn to_rat(&self) -> Result<Rat, CliError> {
        match self {
            RatLit::Int(v) => Ok(Rat::from(Int::from(*v))),
            RatLit::Str(s) => parse_rat(s),
        }
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, CliError> {
    let bad = || CliError::Parse(format!("invalid rational '{s}' (expected p or p/q)"));
    let mut parts = s.splitn(2, '/');
    let numer: Int = parts.next().unwrap_or("").trim().parse().map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Rat::from(numer)),
        Some(d) => {
            let denom: Int = d.trim().parse().map_err(|_| bad())?;
            if denom == Int::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Serialization form of a rational: always `"p/q"` or a bare integer
/// string, never floating point.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawConstraint {
    pub point: [i64; 3],
    pub level: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawPoly {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<(RatLit, u32)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<RatLit>>,
}

/// The raw document as written by the user.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawJob {
    pub s: u32,
    pub f: RawPoly,
    pub polytope: Vec<RawConstraint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilate: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analyses: Option<Vec<String>>,
}

/// A parsed and validated job.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub s: ShearParam,
    pub f: FactoredPoly,
    /// Constraints in the user's order.
    pub constraints: Vec<(TropicalPoint, Int)>,
    pub dilate: u32,
    pub analyses: Vec<Analysis>,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<JobSpec, CliError> {
        let raw: RawJob =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("bad job document: {e}")))?;
        JobSpec::from_raw(&raw)
    }

    pub fn from_raw(raw: &RawJob) -> Result<JobSpec, CliError> {
        let s = ShearParam::new(raw.s).map_err(CliError::Validation)?;
        let f = match (&raw.f.roots, &raw.f.coeffs) {
            (Some(roots), None) => {
                let mut parsed = Vec::with_capacity(roots.len());
                for (lit, mult) in roots {
                    parsed.push((lit.to_rat()?, *mult));
                }
                FactoredPoly::from_roots(&parsed).map_err(CliError::Validation)?
            }
            (None, Some(coeffs)) => {
                let mut parsed = Vec::with_capacity(coeffs.len());
                for lit in coeffs {
                    parsed.push(lit.to_rat()?);
                }
                FactoredPoly::from_coeffs(parsed).map_err(CliError::Validation)?
            }
            _ => {
                return Err(CliError::Parse(
                    "f must have exactly one of 'roots' or 'coeffs'".into(),
                ))
            }
        };
        if f.s() != raw.s {
            return Err(CliError::Validation(mutsurf::Error::InvalidPolynomial(format!(
                "deg f = {} but s = {}",
                f.s(),
                raw.s
            ))));
        }
        let mut constraints = Vec::with_capacity(raw.polytope.len());
        for c in &raw.polytope {
            let point = TropicalPoint::new(s, c.point[0], c.point[1], c.point[2])
                .map_err(CliError::Validation)?;
            constraints.push((point, Int::from(c.level)));
        }
        let dilate = raw.dilate.unwrap_or(1);
        if dilate == 0 {
            return Err(CliError::Parse("dilate must be at least 1".into()));
        }
        let analyses = match &raw.analyses {
            Some(names) => Analysis::parse_list(names)?,
            None => Analysis::parse_list(&["all".to_string()])?,
        };
        Ok(JobSpec { s, f, constraints, dilate, analyses })
    }

    /// The raw document this job canonicalizes to (used for the echo).
    pub fn to_raw(&self, constraint_order: &[usize]) -> RawJob {
        let f = match self.f.repr() {
            PolyRepr::Roots(roots) => RawPoly {
                roots: Some(
                    roots
                        .iter()
                        .map(|(r, m)| (RatLit::Str(rat_to_string(r)), *m))
                        .collect(),
                ),
                coeffs: None,
            },
            PolyRepr::Coeffs(coeffs) => RawPoly {
                roots: None,
                coeffs: Some(coeffs.iter().map(|c| RatLit::Str(rat_to_string(c))).collect()),
            },
        };
        let polytope = constraint_order
            .iter()
            .map(|&u| {
                let (p, level) = &self.constraints[u];
                RawConstraint {
                    point: [
                        i64::try_from(&p.a).expect("small"),
                        i64::try_from(&p.b).expect("small"),
                        i64::try_from(&p.c).expect("small"),
                    ],
                    level: i64::try_from(level).expect("small"),
                }
            })
            .collect();
        RawJob {
            s: self.s.get(),
            f,
            polytope,
            dilate: Some(self.dilate),
            analyses: Some(self.analyses.iter().map(|a| a.name().to_string()).collect()),
        }
    }
}
