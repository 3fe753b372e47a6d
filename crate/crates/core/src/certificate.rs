//! The exclusion certificate and its `.gapcert` text format.
//!
//! One self-contained record per certificate, integers in decimal, trail
//! order preserved. Serialize -> parse -> verify is lossless; the parser is
//! strict so that any textual tampering either fails to parse or fails to
//! re-verify.

use crate::gaps::FamilyParams;
use crate::primality::{PrimalityMethod, PrimalityStatus, PrimalityVerdict};
use crate::trail::TrailEntry;
use crate::{Error, Natural, Result};

/// Canonical file extension for serialized certificates.
pub const FILE_EXTENSION: &str = "gapcert";

const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExclusionRule {
    /// delta <= 2 (only delta = 2 in practice; delta = 1 is +/-1 mod 12).
    MinGap,
    Mod12,
    TriangularFamily,
    AdHocSquare,
}

impl ExclusionRule {
    pub fn label(self) -> &'static str {
        match self {
            ExclusionRule::MinGap => "min-gap",
            ExclusionRule::Mod12 => "mod12",
            ExclusionRule::TriangularFamily => "triangular-family",
            ExclusionRule::AdHocSquare => "adhoc-square",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "min-gap" => Some(ExclusionRule::MinGap),
            "mod12" => Some(ExclusionRule::Mod12),
            "triangular-family" => Some(ExclusionRule::TriangularFamily),
            "adhoc-square" => Some(ExclusionRule::AdHocSquare),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExclusionReason {
    NotSquareA,
    MersenneComposite,
    NotPerfectN,
    ShapeViolation,
}

impl ExclusionReason {
    pub fn label(self) -> &'static str {
        match self {
            ExclusionReason::NotSquareA => "not-square-a",
            ExclusionReason::MersenneComposite => "mersenne-composite",
            ExclusionReason::NotPerfectN => "not-perfect-n",
            ExclusionReason::ShapeViolation => "shape-violation",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "not-square-a" => Some(ExclusionReason::NotSquareA),
            "mersenne-composite" => Some(ExclusionReason::MersenneComposite),
            "not-perfect-n" => Some(ExclusionReason::NotPerfectN),
            "shape-violation" => Some(ExclusionReason::ShapeViolation),
            _ => None,
        }
    }
}

/// Why one candidate exponent p admits no solution. Evidence values are
/// recomputable: for NotPerfectN they are (n, sigma(n)), for
/// MersenneComposite (2^p - 1, factor), for NotSquareA (A, floor sqrt A),
/// for ShapeViolation (B,).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateExclusion {
    pub p: u64,
    pub reason: ExclusionReason,
    pub evidence: Vec<Natural>,
}

/// A replayable trail proving that no two perfect numbers differ by
/// `delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionCertificate {
    pub delta: Natural,
    pub rule: ExclusionRule,
    /// AdHocSquare beyond the worked delta = 435 example.
    pub extended: bool,
    pub params: Option<FamilyParams>,
    /// The screening prime l = 8m + 3, when the rule uses one.
    pub l_value: Option<Natural>,
    pub l_primality: Option<PrimalityVerdict>,
    pub candidate_exclusions: Vec<CandidateExclusion>,
    pub check_trail: Vec<TrailEntry>,
}

impl ExclusionCertificate {
    /// Render the certificate as a `.gapcert` record.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("gapcert {FORMAT_VERSION}\n"));
        out.push_str(&format!("delta: {}\n", self.delta));
        out.push_str(&format!("rule: {}\n", self.rule.label()));
        out.push_str(&format!("extended: {}\n", self.extended));
        if let Some(p) = &self.params {
            out.push_str(&format!(
                "family: s={} m={} b={} l={} delta={}\n",
                p.s, p.m, p.b, p.l, p.delta
            ));
        }
        if let Some(l) = &self.l_value {
            out.push_str(&format!("l: {l}\n"));
        }
        if let Some(v) = &self.l_primality {
            let status = match v.status {
                PrimalityStatus::Prime => "prime",
                PrimalityStatus::ProbablePrime => "probable-prime",
                PrimalityStatus::Composite => "composite",
                PrimalityStatus::BelowTwo => "below-two",
            };
            out.push_str(&format!("l-status: {status}\n"));
            out.push_str(&format!("l-method: {}\n", v.method.label()));
            if let Some(w) = &v.witness {
                out.push_str(&format!("l-witness: {w}\n"));
            }
        }
        for c in &self.candidate_exclusions {
            let evidence = c
                .evidence
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(
                "candidate: p={} reason={} evidence={}\n",
                c.p,
                c.reason.label(),
                evidence
            ));
        }
        out.push_str(&format!("trail: {}\n", self.check_trail.len()));
        for entry in &self.check_trail {
            out.push_str(&entry.render());
            out.push('\n');
        }
        out.push_str("end\n");
        out
    }

    /// Strict parser for the `.gapcert` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let syntax = |line: usize, message: &str| Error::CertificateSyntax {
            line: line + 1,
            message: message.to_string(),
        };

        let (i, header) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
        if header != format!("gapcert {FORMAT_VERSION}") {
            return Err(syntax(i, "bad header"));
        }

        let mut delta: Option<Natural> = None;
        let mut rule: Option<ExclusionRule> = None;
        let mut extended = false;
        let mut params: Option<FamilyParams> = None;
        let mut l_value: Option<Natural> = None;
        let mut l_status: Option<PrimalityStatus> = None;
        let mut l_method: Option<PrimalityMethod> = None;
        let mut l_witness: Option<Natural> = None;
        let mut candidates: Vec<CandidateExclusion> = Vec::new();
        let mut trail: Vec<TrailEntry> = Vec::new();
        let mut trail_count: Option<usize> = None;
        let mut saw_end = false;

        for (i, line) in &mut lines {
            if let Some(expected) = trail_count {
                if trail.len() < expected {
                    let entry = TrailEntry::parse(line).map_err(|e| match e {
                        Error::CertificateSyntax { message, .. } => Error::CertificateSyntax {
                            line: i + 1,
                            message,
                        },
                        other => other,
                    })?;
                    trail.push(entry);
                    continue;
                }
                if line == "end" {
                    saw_end = true;
                    break;
                }
                return Err(syntax(i, "expected end after trail"));
            }
            let (key, value) = line
                .split_once(": ")
                .ok_or_else(|| syntax(i, "expected key: value"))?;
            match key {
                "delta" => {
                    delta = Some(
                        value
                            .parse::<Natural>()
                            .map_err(|_| syntax(i, "invalid delta"))?,
                    )
                }
                "rule" => {
                    rule = Some(
                        ExclusionRule::from_label(value).ok_or_else(|| syntax(i, "unknown rule"))?,
                    )
                }
                "extended" => {
                    extended = match value {
                        "true" => true,
                        "false" => false,
                        _ => return Err(syntax(i, "invalid extended flag")),
                    }
                }
                "family" => {
                    let fields: Vec<&str> = value.split(' ').collect();
                    if fields.len() != 5 {
                        return Err(syntax(i, "family needs 5 fields"));
                    }
                    let take = |idx: usize, name: &str| -> Result<Natural> {
                        let (k, v) = fields[idx]
                            .split_once('=')
                            .ok_or_else(|| syntax(i, "family field is not key=value"))?;
                        if k != name {
                            return Err(syntax(i, "family field out of order"));
                        }
                        v.parse::<Natural>()
                            .map_err(|_| syntax(i, "invalid family value"))
                    };
                    params = Some(FamilyParams {
                        s: take(0, "s")?,
                        m: take(1, "m")?,
                        b: take(2, "b")?,
                        l: take(3, "l")?,
                        delta: take(4, "delta")?,
                    });
                }
                "l" => {
                    l_value = Some(
                        value
                            .parse::<Natural>()
                            .map_err(|_| syntax(i, "invalid l"))?,
                    )
                }
                "l-status" => {
                    l_status = Some(match value {
                        "prime" => PrimalityStatus::Prime,
                        "probable-prime" => PrimalityStatus::ProbablePrime,
                        "composite" => PrimalityStatus::Composite,
                        "below-two" => PrimalityStatus::BelowTwo,
                        _ => return Err(syntax(i, "unknown l-status")),
                    })
                }
                "l-method" => {
                    l_method = Some(
                        PrimalityMethod::from_label(value)
                            .ok_or_else(|| syntax(i, "unknown l-method"))?,
                    )
                }
                "l-witness" => {
                    l_witness = Some(
                        value
                            .parse::<Natural>()
                            .map_err(|_| syntax(i, "invalid l-witness"))?,
                    )
                }
                "candidate" => {
                    let fields: Vec<&str> = value.split(' ').collect();
                    if fields.len() != 3 {
                        return Err(syntax(i, "candidate needs 3 fields"));
                    }
                    let p = fields[0]
                        .strip_prefix("p=")
                        .and_then(|v| v.parse::<u64>().ok())
                        .ok_or_else(|| syntax(i, "invalid candidate p"))?;
                    let reason = fields[1]
                        .strip_prefix("reason=")
                        .and_then(ExclusionReason::from_label)
                        .ok_or_else(|| syntax(i, "invalid candidate reason"))?;
                    let ev = fields[2]
                        .strip_prefix("evidence=")
                        .ok_or_else(|| syntax(i, "missing candidate evidence"))?;
                    let evidence = if ev.is_empty() {
                        Vec::new()
                    } else {
                        ev.split(',')
                            .map(|x| {
                                x.parse::<Natural>()
                                    .map_err(|_| syntax(i, "invalid evidence value"))
                            })
                            .collect::<Result<_>>()?
                    };
                    candidates.push(CandidateExclusion {
                        p,
                        reason,
                        evidence,
                    });
                }
                "trail" => {
                    trail_count = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| syntax(i, "invalid trail count"))?,
                    );
                    if trail_count == Some(0) {
                        return Err(syntax(i, "empty trail"));
                    }
                }
                _ => return Err(syntax(i, "unknown key")),
            }
        }

        if !saw_end {
            return Err(Error::CertificateSyntax {
                line: 0,
                message: "missing end marker".to_string(),
            });
        }
        if lines.next().is_some() {
            return Err(Error::CertificateSyntax {
                line: 0,
                message: "trailing content after end".to_string(),
            });
        }
        let expected = trail_count.ok_or(Error::CertificateSyntax {
            line: 0,
            message: "missing trail section".to_string(),
        })?;
        if trail.len() != expected {
            return Err(Error::CertificateSyntax {
                line: 0,
                message: "trail count mismatch".to_string(),
            });
        }

        let l_primality = match (l_status, l_method) {
            (Some(status), Some(method)) => Some(PrimalityVerdict {
                status,
                witness: l_witness,
                method,
            }),
            (None, None) => None,
            _ => {
                return Err(Error::CertificateSyntax {
                    line: 0,
                    message: "incomplete l-primality record".to_string(),
                })
            }
        };

        Ok(ExclusionCertificate {
            delta: delta.ok_or(Error::CertificateSyntax {
                line: 0,
                message: "missing delta".to_string(),
            })?,
            rule: rule.ok_or(Error::CertificateSyntax {
                line: 0,
                message: "missing rule".to_string(),
            })?,
            extended,
            params,
            l_value,
            l_primality,
            candidate_exclusions: candidates,
            check_trail: trail,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nat;
    use crate::trail::CheckStatement;

    fn tiny_cert() -> ExclusionCertificate {
        ExclusionCertificate {
            delta: nat(13),
            rule: ExclusionRule::Mod12,
            extended: false,
            params: None,
            l_value: None,
            l_primality: None,
            candidate_exclusions: Vec::new(),
            check_trail: vec![
                TrailEntry {
                    statement: CheckStatement::ResidueIs {
                        value: nat(13),
                        modulus: 12,
                        residue: 1,
                    },
                    verified: true,
                },
                TrailEntry {
                    statement: CheckStatement::Mod12TableExcludes { residue: 1 },
                    verified: true,
                },
            ],
        }
    }

    #[test]
    fn round_trip_is_lossless() {
        let cert = tiny_cert();
        let text = cert.to_text();
        let back = ExclusionCertificate::parse(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parser_rejects_malformed_input() {
        let cert = tiny_cert();
        let text = cert.to_text();

        assert!(ExclusionCertificate::parse("").is_err());
        assert!(ExclusionCertificate::parse("gapcert 2\n").is_err());
        // truncation: drop the end marker
        let truncated = text.replace("end\n", "");
        assert!(ExclusionCertificate::parse(&truncated).is_err());
        // trailing garbage
        let padded = format!("{text}junk\n");
        assert!(ExclusionCertificate::parse(&padded).is_err());
        // unknown key
        let injected = text.replace("rule: mod12", "rule: mod12\nbogus: 1");
        assert!(ExclusionCertificate::parse(&injected).is_err());
        // wrong trail count
        let miscounted = text.replace("trail: 2", "trail: 3");
        assert!(ExclusionCertificate::parse(&miscounted).is_err());
    }
}
