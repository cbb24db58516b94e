//! Fibration data model and the inequality verifier.
//!
//! A fibration is given by its genus and an ordered list of singular fibers,
//! each an ordered list of (possibly conjugated) right-handed Dehn twist
//! specifiers. The verifier checks the necessary conditions it can decide:
//! the flattened monodromy word must die in the integral symplectic group,
//! its winding must match the degree-character prediction `−gπN/(4g+2)`, and
//! the count bound `N ≤ (4g+2)·D` must hold. Word-problem membership in the
//! hyperelliptic mapping class group is out of reach, so a clean report
//! certifies necessary conditions only, never a refutation; a mismatch means
//! the input is not a valid hyperelliptic fibration word (or numerics broke),
//! and the report says so.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::artin::{BraidWord, Letter, WordError};
use crate::cover::{
    displacement_angle_trace, lift_word, CoverError, NilpotentLog, PolarContext,
};
use crate::symprep::{chain_classes, pairing, sigma, LatticeVector, SymprepError};

use num_traits::Zero;
use std::f64::consts::PI;

#[derive(Debug, Error)]
pub enum SzpiroError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed fibration file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("genus must be at least 1, got {0}")]
    InvalidGenus(u32),
    #[error("genus {0} outside the supported example range 1..=4")]
    ExampleGenus(u32),
    #[error("twist generator {gen} out of range 1..={max}")]
    GeneratorOutOfRange { gen: u32, max: u32 },
    #[error(transparent)]
    Symprep(#[from] SymprepError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}

/// One right-handed Dehn twist `conj · t_gen · conj^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    pub gen: u32,
    pub conj: BraidWord,
}

impl TwistSpec {
    pub fn plain(gen: u32, strands: u32) -> Result<TwistSpec, SzpiroError> {
        Ok(TwistSpec { gen, conj: BraidWord::identity(strands)? })
    }

    /// The twist as a braid word.
    pub fn word(&self) -> BraidWord {
        let mut w = self.conj.clone();
        w.push(Letter::positive(self.gen)).expect("gen validated at construction");
        w.concat(&self.conj.inverse()).expect("same strand count")
    }
}

/// Genus plus ordered fibers of ordered twists. `N` is the total twist count
/// and `D` the fiber count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationSpec {
    genus: u32,
    fibers: Vec<Vec<TwistSpec>>,
}

#[derive(Serialize, Deserialize)]
struct RawTwist {
    gen: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    conj: String,
}

#[derive(Serialize, Deserialize)]
struct RawFibration {
    genus: u32,
    fibers: Vec<Vec<RawTwist>>,
}

impl FibrationSpec {
    pub fn new(genus: u32, fibers: Vec<Vec<TwistSpec>>) -> Result<FibrationSpec, SzpiroError> {
        if genus < 1 {
            return Err(SzpiroError::InvalidGenus(genus));
        }
        let strands = 2 * genus + 2;
        let max = 2 * genus + 1;
        for fiber in &fibers {
            for twist in fiber {
                if twist.gen == 0 || twist.gen > max {
                    return Err(SzpiroError::GeneratorOutOfRange { gen: twist.gen, max });
                }
                if twist.conj.strands() != strands {
                    return Err(SzpiroError::Word(WordError::StrandMismatch(
                        twist.conj.strands(),
                        strands,
                    )));
                }
            }
        }
        Ok(FibrationSpec { genus, fibers })
    }

    pub fn from_json_str(text: &str) -> Result<FibrationSpec, SzpiroError> {
        let raw: RawFibration = serde_json::from_str(text)?;
        if raw.genus < 1 {
            return Err(SzpiroError::InvalidGenus(raw.genus));
        }
        let strands = 2 * raw.genus + 2;
        let mut fibers = Vec::with_capacity(raw.fibers.len());
        for raw_fiber in raw.fibers {
            let mut fiber = Vec::with_capacity(raw_fiber.len());
            for t in raw_fiber {
                fiber.push(TwistSpec { gen: t.gen, conj: BraidWord::parse(&t.conj, strands)? });
            }
            fibers.push(fiber);
        }
        FibrationSpec::new(raw.genus, fibers)
    }

    /// Loads a fibration from a JSON file (UTF-8).
    pub fn from_path(path: impl AsRef<Path>) -> Result<FibrationSpec, SzpiroError> {
        FibrationSpec::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let raw = RawFibration {
            genus: self.genus,
            fibers: self
                .fibers
                .iter()
                .map(|fiber| {
                    fiber
                        .iter()
                        .map(|t| RawTwist { gen: t.gen, conj: t.conj.to_string() })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("fibration serialization cannot fail")
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn fibers(&self) -> &[Vec<TwistSpec>] {
        &self.fibers
    }

    /// Total number of vanishing cycles, `N`.
    pub fn twist_count(&self) -> u64 {
        self.fibers.iter().map(|f| f.len() as u64).sum()
    }

    /// Number of singular fibers, `D`.
    pub fn fiber_count(&self) -> u64 {
        self.fibers.len() as u64
    }

    /// The flattened monodromy word `μ`: all twists in order.
    pub fn monodromy_word(&self) -> BraidWord {
        let mut word = BraidWord::identity(2 * self.genus + 2).expect("genus >= 1");
        for fiber in &self.fibers {
            for twist in fiber {
                word = word.concat(&twist.word()).expect("same strand count");
            }
        }
        word
    }

    /// Homology classes of the conjugated vanishing cycles in one fiber.
    fn fiber_classes(&self, fiber: &[TwistSpec]) -> Vec<LatticeVector> {
        let chain = chain_classes(self.genus);
        fiber
            .iter()
            .map(|twist| {
                sigma(&twist.conj, self.genus)
                    .and_then(|m| m.apply(chain.class(twist.gen)?))
                    .expect("twists validated at construction")
            })
            .collect()
    }
}

/// A semistability/non-separation violation found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub fiber: usize,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fiber {}: {}", self.fiber, self.message)
    }
}

/// Checks, per fiber, pairwise homological commutation `θ = 0` of the
/// conjugated classes (the semistability proxy for disjoint commuting twists)
/// and that every class is nonzero (the non-separating proxy).
pub fn validate(spec: &FibrationSpec) -> Vec<Issue> {
    let mut issues = Vec::new();
    for (index, fiber) in spec.fibers().iter().enumerate() {
        let classes = spec.fiber_classes(fiber);
        for (i, a) in classes.iter().enumerate() {
            if a.is_zero() {
                issues.push(Issue {
                    fiber: index,
                    message: format!("twist {i} has zero homology class (separating cycle)"),
                });
            }
            for (j, b) in classes.iter().enumerate().skip(i + 1) {
                let p = pairing(a, b).expect("classes share a rank");
                if !p.is_zero() {
                    issues.push(Issue {
                        fiber: index,
                        message: format!("twists {i} and {j} do not commute homologically (θ = {p})"),
                    });
                }
            }
        }
    }
    issues
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            Verdict::Fail => f.write_str("FAIL"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub size: usize,
    pub commuting_ok: bool,
    pub nonseparating_ok: bool,
    /// Trace-form displacement angle of the fiber's nilpotent log; absent
    /// when the fiber is not homologically commuting.
    pub da_trace: Option<f64>,
    pub lemma_range_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub genus: u32,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "D")]
    pub d: u64,
    pub bound_ok: bool,
    pub sigma_identity: bool,
    pub winding: f64,
    pub winding_predicted: f64,
    pub winding_ok: bool,
    pub fibers: Vec<FiberReport>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus {}: N = {}, D = {}, bound N <= {}D", self.genus, self.n, self.d, 4 * self.genus + 2)?;
        writeln!(f, "  bound_ok        {}  ({} <= {})", self.bound_ok, self.n, (4 * u64::from(self.genus) + 2) * self.d)?;
        writeln!(f, "  sigma_identity  {}", self.sigma_identity)?;
        writeln!(
            f,
            "  winding         {:+.9} (predicted {:+.9}, ok {})",
            self.winding, self.winding_predicted, self.winding_ok
        )?;
        for (i, fiber) in self.fibers.iter().enumerate() {
            let da = fiber
                .da_trace
                .map_or("n/a".to_string(), |v| format!("{v:+.6}"));
            writeln!(
                f,
                "  fiber {i}: size {}, commuting {}, nonseparating {}, da_trace {}, in [-pi,0] {}",
                fiber.size, fiber.commuting_ok, fiber.nonseparating_ok, da, fiber.lemma_range_ok
            )?;
        }
        writeln!(f, "  verdict         {}", self.verdict)?;
        write!(
            f,
            "  note: PASS certifies necessary conditions (σ(μ) = I, winding identity, bound); \
             kernel membership itself is not decided"
        )
    }
}

/// Runs the full check on a fibration: flattens the monodromy word, tests
/// `σ(μ) = I` exactly, tracks the winding against `−gπN/(4g+2)`, checks the
/// bound `N ≤ (4g+2)D`, and scores each fiber. Per-fiber trace angles outside
/// `[−π, 0]` are reported as warnings, not failures.
pub fn verify(spec: &FibrationSpec, tolerance: f64) -> Result<VerificationReport, SzpiroError> {
    let g = spec.genus();
    let n = spec.twist_count();
    let d = spec.fiber_count();
    let word = spec.monodromy_word();

    let sigma_identity = sigma(&word, g)?.is_identity();

    let ctx = PolarContext::new(g);
    let lifted = lift_word(&word, g, &ctx)?;
    let winding = lifted.winding();
    let winding_predicted = -(g as f64) * PI * (n as f64) / (4 * g + 2) as f64;
    let winding_ok = (winding - winding_predicted).abs() < tolerance;
    let bound_ok = n <= (4 * u64::from(g) + 2) * d;

    let mut fibers = Vec::with_capacity(spec.fibers().len());
    let mut all_commuting = true;
    for fiber in spec.fibers() {
        let classes = spec.fiber_classes(fiber);
        let nonseparating_ok = classes.iter().all(|c| !c.is_zero());
        let commuting_ok = classes.iter().enumerate().all(|(i, a)| {
            classes[i + 1..].iter().all(|b| pairing(a, b).expect("same rank").is_zero())
        });
        all_commuting &= commuting_ok;
        let da_trace = if commuting_ok {
            let log = NilpotentLog::unit_twists(g, classes)?;
            Some(displacement_angle_trace(&log, &ctx)?)
        } else {
            None
        };
        let lemma_range_ok =
            da_trace.is_some_and(|v| (-PI - 1e-9..=1e-9).contains(&v));
        fibers.push(FiberReport { size: fiber.len(), commuting_ok, nonseparating_ok, da_trace, lemma_range_ok });
    }

    let verdict = if bound_ok && sigma_identity && winding_ok && all_commuting {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    Ok(VerificationReport {
        genus: g,
        n,
        d,
        bound_ok,
        sigma_identity,
        winding,
        winding_predicted,
        winding_ok,
        fibers,
        verdict,
    })
}

/// Example fibrations for `1 <= g <= 4`, both built from the full-twist word:
/// (a) every twist its own fiber, and (b) the same word regrouped greedily
/// into maximal runs of consecutive homologically-commuting twists.
pub fn example_fibrations(genus: u32) -> Result<Vec<FibrationSpec>, SzpiroError> {
    if !(1..=4).contains(&genus) {
        return Err(SzpiroError::ExampleGenus(genus));
    }
    let strands = 2 * genus + 2;
    let indices: Vec<u32> =
        std::iter::repeat(1..=2 * genus + 1).take(2 * genus as usize + 2).flatten().collect();

    let singletons: Vec<Vec<TwistSpec>> = indices
        .iter()
        .map(|&i| Ok(vec![TwistSpec::plain(i, strands)?]))
        .collect::<Result<_, SzpiroError>>()?;

    let chain = chain_classes(genus);
    let mut grouped: Vec<Vec<TwistSpec>> = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    for &i in &indices {
        let commutes = current.iter().all(|&j| {
            pairing(chain.class(i).expect("in range"), chain.class(j).expect("in range"))
                .expect("same rank")
                .is_zero()
        });
        if commutes {
            current.push(i);
        } else {
            grouped.push(current.drain(..).map(|j| TwistSpec::plain(j, strands)).collect::<Result<_, _>>()?);
            current.push(i);
        }
    }
    if !current.is_empty() {
        grouped.push(current.drain(..).map(|j| TwistSpec::plain(j, strands)).collect::<Result<_, _>>()?);
    }

    Ok(vec![
        FibrationSpec::new(genus, singletons)?,
        FibrationSpec::new(genus, grouped)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_minimal_file() {
        let spec =
            FibrationSpec::from_json_str(r#"{"genus": 1, "fibers": [[{"gen": 1}]]}"#).unwrap();
        assert_eq!(spec.twist_count(), 1);
        assert_eq!(spec.fiber_count(), 1);
        assert_eq!(spec.monodromy_word(), BraidWord::parse("t1", 4).unwrap());
    }

    #[test]
    fn load_empty_fibers() {
        let spec = FibrationSpec::from_json_str(r#"{"genus": 2, "fibers": []}"#).unwrap();
        assert_eq!(spec.twist_count(), 0);
        assert_eq!(spec.fiber_count(), 0);
    }

    #[test]
    fn load_rejects_bad_inputs() {
        assert!(matches!(
            FibrationSpec::from_json_str(r#"{"genus": 1, "fibers": [[{"gen": 6}]]}"#),
            Err(SzpiroError::GeneratorOutOfRange { gen: 6, max: 3 })
        ));
        assert!(matches!(
            FibrationSpec::from_json_str(r#"{"genus": 0, "fibers": []}"#),
            Err(SzpiroError::InvalidGenus(0))
        ));
        assert!(matches!(
            FibrationSpec::from_json_str(r#"{"fibers": []}"#),
            Err(SzpiroError::Json(_))
        ));
        assert!(matches!(
            FibrationSpec::from_json_str(r#"{"genus": 1, "fibers": [[{"gen": 1, "conj": "t9"}]]}"#),
            Err(SzpiroError::Word(WordError::IndexOutOfRange { .. }))
        ));
    }

    #[test]
    fn conjugated_twists_roundtrip_through_json() {
        let spec = FibrationSpec::from_json_str(
            r#"{"genus": 1, "fibers": [[{"gen": 1, "conj": "t2 T1"}], [{"gen": 3}]]}"#,
        )
        .unwrap();
        let text = spec.to_json_string();
        assert_eq!(FibrationSpec::from_json_str(&text).unwrap(), spec);
        assert_eq!(
            spec.monodromy_word(),
            BraidWord::parse("t2 T1 t1 t1 T2 t3", 4).unwrap()
        );
    }

    #[test]
    fn validate_flags_noncommuting_fibers() {
        let spec = FibrationSpec::new(
            1,
            vec![vec![TwistSpec::plain(1, 4).unwrap(), TwistSpec::plain(3, 4).unwrap()]],
        )
        .unwrap();
        assert!(validate(&spec).is_empty());

        let bad = FibrationSpec::new(
            1,
            vec![vec![TwistSpec::plain(1, 4).unwrap(), TwistSpec::plain(2, 4).unwrap()]],
        )
        .unwrap();
        let issues = validate(&bad);
        assert_eq!(issues.len(), 1);
        assert!(issues[0].message.contains("do not commute"));
    }

    #[test]
    fn verify_fails_on_non_fibration_word() {
        let spec = FibrationSpec::new(
            1,
            vec![vec![TwistSpec::plain(1, 4).unwrap()], vec![TwistSpec::plain(2, 4).unwrap()]],
        )
        .unwrap();
        let report = verify(&spec, 1e-6).unwrap();
        assert!(!report.sigma_identity);
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(report.bound_ok);
    }

    #[test]
    fn full_twist_singletons_pass() {
        let specs = example_fibrations(1).unwrap();
        let report = verify(&specs[0], 1e-6).unwrap();
        assert_eq!((report.n, report.d), (12, 12));
        assert!(report.bound_ok && report.sigma_identity && report.winding_ok);
        assert_eq!(report.verdict, Verdict::Pass);
        assert!((report.winding_predicted - (-2.0 * PI)).abs() < 1e-12);
        assert!(report.fibers.iter().all(|f| f.lemma_range_ok));
    }

    #[test]
    fn grouped_example_shrinks_fiber_count() {
        let specs = example_fibrations(1).unwrap();
        let grouped = &specs[1];
        assert_eq!(grouped.twist_count(), 12);
        assert!(grouped.fiber_count() < 12);
        let report = verify(grouped, 1e-6).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.fibers.iter().all(|f| f.commuting_ok && f.nonseparating_ok));
    }

    #[test]
    fn example_counts_by_genus() {
        let specs = example_fibrations(2).unwrap();
        assert_eq!(specs[0].twist_count(), 30);
        assert_eq!(specs[0].fiber_count(), 30);
        assert!(example_fibrations(5).is_err());
    }

    #[test]
    fn merging_commuting_fibers_preserves_everything() {
        // take the singleton variant and merge two adjacent commuting fibers
        let specs = example_fibrations(1).unwrap();
        let singles = &specs[0];
        let mut fibers = singles.fibers().to_vec();
        // fibers 2 and 3 hold t3 and t1, which commute
        let moved = fibers.remove(3);
        fibers[2].extend(moved);
        let merged = FibrationSpec::new(1, fibers).unwrap();
        assert_eq!(merged.fiber_count(), singles.fiber_count() - 1);
        assert_eq!(merged.twist_count(), singles.twist_count());

        let a = verify(singles, 1e-6).unwrap();
        let b = verify(&merged, 1e-6).unwrap();
        assert_eq!(a.sigma_identity, b.sigma_identity);
        assert!((a.winding - b.winding).abs() < 1e-9);
        assert_eq!(b.verdict, Verdict::Pass);
    }

    #[test]
    fn permuting_twists_in_a_commuting_fiber_changes_nothing() {
        let specs = example_fibrations(1).unwrap();
        let grouped = &specs[1];
        let mut fibers = grouped.fibers().to_vec();
        let swapped_at = fibers.iter().position(|f| f.len() == 2).expect("a 2-twist fiber exists");
        fibers[swapped_at].reverse();
        let permuted = FibrationSpec::new(1, fibers).unwrap();

        let a = verify(grouped, 1e-6).unwrap();
        let b = verify(&permuted, 1e-6).unwrap();
        assert_eq!(sigma(&grouped.monodromy_word(), 1).unwrap(), sigma(&permuted.monodromy_word(), 1).unwrap());
        assert!((a.winding - b.winding).abs() < 1e-9);
        assert_eq!(b.verdict, Verdict::Pass);
    }

    #[test]
    fn report_json_field_names_are_frozen() {
        let specs = example_fibrations(1).unwrap();
        let report = verify(&specs[1], 1e-6).unwrap();
        let value: serde_json::Value = serde_json::from_str(&report.to_json_string()).unwrap();
        for key in [
            "genus", "N", "D", "bound_ok", "sigma_identity", "winding", "winding_predicted",
            "winding_ok", "fibers", "verdict",
        ] {
            assert!(value.get(key).is_some(), "missing key {key}");
        }
        assert_eq!(value["verdict"], "PASS");
        let fiber = &value["fibers"][0];
        for key in ["size", "commuting_ok", "nonseparating_ok", "da_trace", "lemma_range_ok"] {
            assert!(fiber.get(key).is_some(), "missing fiber key {key}");
        }
    }

    #[test]
    fn concurrent_verification_is_safe() {
        let handles: Vec<_> = (1..=2u32)
            .map(|g| {
                std::thread::spawn(move || {
                    let specs = example_fibrations(g).unwrap();
                    verify(&specs[0], 1e-6).unwrap().verdict
                })
            })
            .collect();
        for handle in handles {
            assert_eq!(handle.join().unwrap(), Verdict::Pass);
        }
    }
}
