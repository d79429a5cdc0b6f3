//! Seeded nonexistence probes over random skeletons.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::catalog::{csq_model_with_heads, zf_adapted, Skeleton};
use crate::error::{Error, Result};
use crate::invariants::{characteristic_sequence, nilindex, CharSequence, Nilindex};
use crate::scalar::Rational;
use crate::verification::sampling::{trial_rng, ParamSampler};

/// Lower end of the per-trial zero probability. Each trial draws its own
/// probability `q` uniformly from `[DEFAULT_ZERO_PROB, 1)` and zeroes every
/// parameter with probability `q`. Dense draws are almost never consistent,
/// so the probe has to reach the sparse corners of parameter space.
pub const DEFAULT_ZERO_PROB: f64 = 0.5;

/// Candidate count used when a probe has to compute a characteristic sequence.
pub const PROBE_CSEQ_SAMPLES: usize = 8;

/// Outcome of one trial, used as a histogram key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Nilindex(usize),
    NotNilpotent,
    Inconsistent,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Nilindex(s) => write!(f, "{s}"),
            Outcome::NotNilpotent => f.write_str("not_nilpotent"),
            Outcome::Inconsistent => f.write_str("inconsistent"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram(pub BTreeMap<Outcome, usize>);

impl Histogram {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn get(&self, key: Outcome) -> usize {
        self.0.get(&key).copied().unwrap_or(0)
    }

    fn add(&mut self, key: Outcome) {
        *self.0.entry(key).or_insert(0) += 1;
    }
}

impl Serialize for Histogram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeViolation {
    pub trial: usize,
    pub nilindex: usize,
    pub char_sequence: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub parts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Lower end of the per-trial zero probability.
    pub zero_prob: f64,
    /// Largest nilindex among consistent nilpotent completions.
    pub max_nilindex: Option<usize>,
    pub histogram: Histogram,
    pub violations: Vec<ProbeViolation>,
}

impl ProbeReport {
    pub fn m(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn consistent(&self) -> usize {
        self.trials - self.histogram.get(Outcome::Inconsistent)
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("probe report serializes")
    }
}

/// One trial: sample, complete, discard inconsistent tables, then test
/// for nilindex ≥ n+m with the target characteristic sequence.
fn run_trial(
    s: &Skeleton<Rational>,
    target: &CharSequence,
    seed: u64,
    trial: usize,
) -> (Outcome, Option<ProbeViolation>) {
    let a = s.complete_table();
    if a.first_leibniz_violation(0.0).is_some() {
        return (Outcome::Inconsistent, None);
    }
    let s_idx = match nilindex(&a) {
        Nilindex::Finite(s) => s,
        Nilindex::NotNilpotent => return (Outcome::NotNilpotent, None),
    };
    let mut violation = None;
    if s_idx >= a.dim() {
        if let Ok(cs) = characteristic_sequence(&a, PROBE_CSEQ_SAMPLES, seed ^ trial as u64) {
            if &cs == target {
                violation = Some(ProbeViolation {
                    trial,
                    nilindex: s_idx,
                    char_sequence: cs.to_string(),
                });
            }
        }
    }
    (Outcome::Nilindex(s_idx), violation)
}

fn run_probe<G>(
    n: usize,
    parts: Vec<usize>,
    trials: usize,
    seed: u64,
    zero_prob: f64,
    make: G,
) -> ProbeReport
where
    G: Fn(&mut ChaCha8Rng, ParamSampler) -> Skeleton<Rational> + Sync,
{
    let mut sorted = parts.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let target = CharSequence::new(vec![n], sorted);
    let results: Vec<(Outcome, Option<ProbeViolation>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (mut rng, sampler) = trial_start(seed, t, zero_prob);
            let s = make(&mut rng, sampler);
            run_trial(&s, &target, seed, t)
        })
        .collect();
    let mut histogram = Histogram::default();
    let mut violations = Vec::new();
    let mut max_nilindex = None;
    for (outcome, v) in results {
        histogram.add(outcome);
        if let Outcome::Nilindex(s) = outcome {
            max_nilindex = max_nilindex.max(Some(s));
        }
        violations.extend(v);
    }
    ProbeReport {
        n,
        parts,
        trials,
        seed,
        zero_prob,
        max_nilindex,
        histogram,
        violations,
    }
}

/// Zero-filiform probe with the default sparsity.
pub fn probe_zf_nonexistence(n: usize, m: usize, trials: usize, seed: u64) -> Result<ProbeReport> {
    probe_zf_with(n, m, trials, seed, DEFAULT_ZERO_PROB)
}

/// The nonexistence claim concerns `n, m ≥ 3`; smaller sizes are accepted
/// so that the `(2, 3)` control can run under the same protocol.
pub fn probe_zf_with(
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
    zero_prob: f64,
) -> Result<ProbeReport> {
    if n == 0 || m == 0 || trials == 0 {
        return Err(Error::DimensionMismatch(format!(
            "probe needs n, m, trials ≥ 1 (got n = {n}, m = {m}, trials = {trials})"
        )));
    }
    Ok(run_probe(
        n,
        vec![m],
        trials,
        seed,
        zero_prob,
        |rng, sampler| zf_sample(rng, sampler, n, m),
    ))
}

fn zf_sample(
    rng: &mut ChaCha8Rng,
    sampler: ParamSampler,
    n: usize,
    m: usize,
) -> Skeleton<Rational> {
    let h = sampler.head_rows(rng, n, m);
    zf_adapted(n, m, h.alpha, h.beta).expect("sampled shapes match")
}

fn csq_sample(
    rng: &mut ChaCha8Rng,
    sampler: ParamSampler,
    n: usize,
    parts: &[usize],
) -> Skeleton<Rational> {
    let m: usize = parts.iter().sum();
    let heads = parts.iter().map(|_| sampler.head_rows(rng, n, m)).collect();
    csq_model_with_heads(n, parts.to_vec(), heads).expect("sampled shapes match")
}

fn trial_start(seed: u64, trial: usize, zero_prob: f64) -> (ChaCha8Rng, ParamSampler) {
    let mut rng = trial_rng(seed, trial as u64);
    let q = zero_prob + (1.0 - zero_prob) * rng.gen::<f64>();
    (rng, ParamSampler::sparse(q))
}

/// The skeleton drawn by trial `trial` of [`probe_zf_with`].
pub fn zf_trial_skeleton(
    n: usize,
    m: usize,
    seed: u64,
    trial: usize,
    zero_prob: f64,
) -> Skeleton<Rational> {
    let (mut rng, sampler) = trial_start(seed, trial, zero_prob);
    zf_sample(&mut rng, sampler, n, m)
}

/// The skeleton drawn by trial `trial` of [`probe_csq_with`].
pub fn csq_trial_skeleton(
    n: usize,
    parts: &[usize],
    seed: u64,
    trial: usize,
    zero_prob: f64,
) -> Skeleton<Rational> {
    let (mut rng, sampler) = trial_start(seed, trial, zero_prob);
    csq_sample(&mut rng, sampler, n, parts)
}

pub fn probe_csq_nonexistence(
    n: usize,
    parts: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    probe_csq_with(n, parts, trials, seed, DEFAULT_ZERO_PROB)
}

/// Every part head gets its own sampled rows.
pub fn probe_csq_with(
    n: usize,
    parts: &[usize],
    trials: usize,
    seed: u64,
    zero_prob: f64,
) -> Result<ProbeReport> {
    check_csq_hypothesis(parts)?;
    if n == 0 || trials == 0 {
        return Err(Error::DimensionMismatch(format!(
            "probe needs n, trials ≥ 1 (got n = {n}, trials = {trials})"
        )));
    }
    Ok(run_probe(
        n,
        parts.to_vec(),
        trials,
        seed,
        zero_prob,
        |rng, sampler| csq_sample(rng, sampler, n, parts),
    ))
}

/// At least two parts, none zero, and the largest at most `m − 2`.
pub fn check_csq_hypothesis(parts: &[usize]) -> Result<()> {
    let m: usize = parts.iter().sum();
    if parts.len() < 2 || parts.contains(&0) {
        return Err(Error::PartitionMismatch {
            parts: parts.to_vec(),
            m,
        });
    }
    let largest = *parts.iter().max().unwrap();
    if largest + 2 > m {
        return Err(Error::HypothesisViolated(format!(
            "largest part {largest} exceeds m − 2 = {}",
            m - 2
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_totals_and_determinism() {
        let a = probe_zf_nonexistence(3, 3, 200, 5).unwrap();
        let b = probe_zf_nonexistence(3, 3, 200, 5).unwrap();
        assert_eq!(a.histogram.total(), 200);
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed());
    }

    #[test]
    fn trial_skeletons_replay_probe() {
        let r = probe_zf_nonexistence(2, 3, 2000, 9).unwrap();
        assert!(!r.violations.is_empty());
        for v in &r.violations {
            let a = zf_trial_skeleton(2, 3, 9, v.trial, DEFAULT_ZERO_PROB)
                .complete()
                .unwrap();
            assert_eq!(nilindex(&a), Nilindex::Finite(v.nilindex));
        }
    }

    #[test]
    fn hypothesis_guard() {
        assert!(matches!(
            probe_csq_nonexistence(2, &[3, 1], 10, 0),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            probe_csq_nonexistence(2, &[4], 10, 0),
            Err(Error::PartitionMismatch { .. })
        ));
        assert!(check_csq_hypothesis(&[1, 1, 1]).is_ok());
        assert!(check_csq_hypothesis(&[2, 2]).is_ok());
    }

    #[test]
    fn histogram_json_keys() {
        let mut h = Histogram::default();
        h.add(Outcome::Nilindex(4));
        h.add(Outcome::Inconsistent);
        h.add(Outcome::Nilindex(4));
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"4":2,"inconsistent":1}"#
        );
    }
}
